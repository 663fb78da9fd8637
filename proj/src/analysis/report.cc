#include "draftwatch/analysis/report.hpp"

#include <cstdio>
#include <sstream>

#include "draftwatch/analysis/metrics.hpp"
#include "draftwatch/error.hpp"

namespace draftwatch::analysis {
namespace {

using nlohmann::json;

template <typename Fn>
std::optional<double> TryP(Fn fn) {
  try {
    return fn();
  } catch (const Error&) {
    return std::nullopt;
  }
}

ConditionSummary Summarize(const std::vector<const Interaction*>& cell, const PosTagger& tagger,
                           const text::SentenceSplitter& splitter) {
  ConditionSummary s;
  s.interactions = cell.size();
  std::vector<double> xs, ys;
  for (const Interaction* in : cell) {
    s.draft_seconds.push_back(DraftingSeconds(*in));
    const auto series = AdjustedSeries(*in);
    std::vector<double> ts, scores;
    for (const auto& p : series) {
      ts.push_back(p.t_adj);
      scores.push_back(p.score);
      xs.push_back(p.t_adj);
      ys.push_back(p.score);
    }
    try {
      s.interaction_rhos.push_back(SpearmanRho(ts, scores));
    } catch (const Error&) {
      // too short or constant: no per-interaction rho
    }
    const std::string_view draft = in->FinalDraft();
    try {
      const auto profile = Profile(draft, tagger, splitter);
      s.f_factors.push_back(profile.f_factor);
      s.formal_count += profile.is_formal;
      s.cdis.push_back(profile.cdi);
      s.question_rates.push_back(profile.question_rate);
      s.word_counts.push_back(static_cast<double>(profile.word_count));
    } catch (const Error&) {
      // no final text to measure
    }
  }
  s.mean_draft_seconds = Mean(s.draft_seconds);
  s.trend_points = xs.size();
  try {
    s.trend = Spearman(xs, ys);
  } catch (const Error& e) {
    s.trend_note = std::string("n/a: ") + std::string(ErrcName(e.code()));
  }
  s.rho_interactions = s.interaction_rhos.size();
  if (!s.interaction_rhos.empty()) s.mean_interaction_rho = Mean(s.interaction_rhos);
  s.linguistic_interactions = s.f_factors.size();
  if (s.linguistic_interactions > 0) {
    s.formality_rate = static_cast<double>(s.formal_count) / static_cast<double>(s.linguistic_interactions);
  }
  s.mean_f_factor = Mean(s.f_factors);
  s.mean_cdi = Mean(s.cdis);
  s.mean_question_rate = Mean(s.question_rates);
  s.mean_word_count = Mean(s.word_counts);
  return s;
}

BandReport Analyze(RiskBand band, const std::vector<const MatchedPair*>& pairs, const PosTagger& tagger,
                   const text::SentenceSplitter& splitter) {
  BandReport r;
  r.band = band;
  r.pairs = pairs.size();
  std::vector<const Interaction*> treatment, control;
  for (const auto* p : pairs) {
    treatment.push_back(&p->treatment);
    control.push_back(&p->control);
  }
  r.treatment = Summarize(treatment, tagger, splitter);
  r.control = Summarize(control, tagger, splitter);
  const auto& t = r.treatment;
  const auto& c = r.control;
  r.p.drafting_time = TryP([&] { return MannWhitney(t.draft_seconds, c.draft_seconds).p; });
  r.p.formality = TryP([&] {
    return FisherExact(t.formal_count, t.linguistic_interactions - t.formal_count, c.formal_count,
                       c.linguistic_interactions - c.formal_count);
  });
  r.p.f_factor = TryP([&] { return MannWhitney(t.f_factors, c.f_factors).p; });
  r.p.cdi = TryP([&] { return MannWhitney(t.cdis, c.cdis).p; });
  r.p.question_rate = TryP([&] { return MannWhitney(t.question_rates, c.question_rates).p; });
  r.p.word_count = TryP([&] { return MannWhitney(t.word_counts, c.word_counts).p; });
  r.p.trend = TryP([&] { return MannWhitney(t.interaction_rhos, c.interaction_rhos).p; });
  return r;
}

json Opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json SummaryJson(const ConditionSummary& s) {
  json trend = s.trend ? json{{"rho", s.trend->rho}, {"p", s.trend->p}} : json{{"na", s.trend_note}};
  return {{"interactions", s.interactions},
          {"mean_draft_seconds", s.mean_draft_seconds},
          {"trend_points", s.trend_points},
          {"spearman", trend},
          {"mean_interaction_rho", Opt(s.mean_interaction_rho)},
          {"rho_interactions", s.rho_interactions},
          {"linguistic_interactions", s.linguistic_interactions},
          {"formal_count", s.formal_count},
          {"formality_rate", s.formality_rate},
          {"mean_f_factor", s.mean_f_factor},
          {"mean_cdi", s.mean_cdi},
          {"mean_question_rate", s.mean_question_rate},
          {"mean_word_count", s.mean_word_count}};
}

json BandJson(const BandReport& b) {
  return {{"band", RiskBandName(b.band)},
          {"pairs", b.pairs},
          {"treatment", SummaryJson(b.treatment)},
          {"control", SummaryJson(b.control)},
          {"p",
           {{"drafting_time", Opt(b.p.drafting_time)},
            {"formality", Opt(b.p.formality)},
            {"f_factor", Opt(b.p.f_factor)},
            {"cdi", Opt(b.p.cdi)},
            {"question_rate", Opt(b.p.question_rate)},
            {"word_count", Opt(b.p.word_count)},
            {"trend", Opt(b.p.trend)}}}};
}

std::string Format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string Marked(const std::string& value, const std::optional<double>& p) {
  return value + (p && *p < kSignificance ? " *" : "  ");
}

std::string Stars(double p) {
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "";
}

}  // namespace

AnalysisReport AnalyzePairs(const std::vector<MatchedPair>& pairs, double warn_threshold) {
  if (pairs.empty()) throw Error(Errc::kNoPairs, "no matched pairs to analyze");
  const PosTagger tagger;
  const text::SentenceSplitter splitter;
  std::vector<const MatchedPair*> at_risk, not_at_risk;
  for (const auto& p : pairs) {
    const auto band = ClassifyRiskBand(p.control.context_score.value(), warn_threshold);
    (band == RiskBand::kAtRisk ? at_risk : not_at_risk).push_back(&p);
  }
  AnalysisReport report;
  report.warn_threshold = warn_threshold;
  report.pairs = pairs.size();
  report.at_risk = Analyze(RiskBand::kAtRisk, at_risk, tagger, splitter);
  report.not_at_risk = Analyze(RiskBand::kNotAtRisk, not_at_risk, tagger, splitter);
  report.word_count_p = TryP([&] {
    auto t = report.at_risk.treatment.word_counts;
    auto c = report.at_risk.control.word_counts;
    t.insert(t.end(), report.not_at_risk.treatment.word_counts.begin(), report.not_at_risk.treatment.word_counts.end());
    c.insert(c.end(), report.not_at_risk.control.word_counts.begin(), report.not_at_risk.control.word_counts.end());
    return MannWhitney(t, c).p;
  });
  return report;
}

json ReportToJson(const AnalysisReport& report) {
  return {{"warn_threshold", report.warn_threshold},
          {"pairs", report.pairs},
          {"interactions", 2 * report.pairs},
          {"word_count_p", Opt(report.word_count_p)},
          {"strata", {BandJson(report.at_risk), BandJson(report.not_at_risk)}}};
}

std::string ReportTable(const AnalysisReport& report) {
  std::ostringstream out;
  char line[256];
  out << report.pairs << " pairs (" << 2 * report.pairs << " interactions); * p < 0.05 versus control\n\n";

  out << "Drafting time (seconds, Mann-Whitney)\n";
  for (const BandReport* b : {&report.at_risk, &report.not_at_risk}) {
    for (bool treated : {false, true}) {
      const auto& s = treated ? b->treatment : b->control;
      std::snprintf(line, sizeof line, "  %-12s %-10s %10s\n", treated ? "" : std::string(RiskBandName(b->band)).c_str(),
                    treated ? "treatment" : "control",
                    (treated ? Marked(Format("%.1f", s.mean_draft_seconds), b->p.drafting_time)
                             : Format("%.1f", s.mean_draft_seconds) + "  ")
                        .c_str());
      out << line;
    }
  }

  out << "\nAdjusted timestamp vs risk score (Spearman rho; ** p<.01, *** p<.001)\n";
  for (const BandReport* b : {&report.at_risk, &report.not_at_risk}) {
    for (bool treated : {false, true}) {
      const auto& s = treated ? b->treatment : b->control;
      std::string cell = s.trend ? Format("%+.3f", s.trend->rho) + Stars(s.trend->p) : s.trend_note;
      std::snprintf(line, sizeof line, "  %-12s %-10s %10s\n", treated ? "" : std::string(RiskBandName(b->band)).c_str(),
                    treated ? "treatment" : "control", cell.c_str());
      out << line;
    }
  }

  out << "\nLinguistic strategies (Fisher exact for rates, Mann-Whitney for means)\n";
  std::snprintf(line, sizeof line, "  %-12s %-10s %16s %12s %16s\n", "", "", "formality rate", "CDI (mean)",
                "question rate");
  out << line;
  for (const BandReport* b : {&report.at_risk, &report.not_at_risk}) {
    for (bool treated : {false, true}) {
      const auto& s = treated ? b->treatment : b->control;
      auto cell = [&](const std::string& v, const std::optional<double>& p) { return treated ? Marked(v, p) : v + "  "; };
      std::snprintf(line, sizeof line, "  %-12s %-10s %16s %12s %16s\n",
                    treated ? "" : std::string(RiskBandName(b->band)).c_str(), treated ? "treatment" : "control",
                    cell(Format("%.1f%%", 100.0 * s.formality_rate), b->p.formality).c_str(),
                    cell(Format("%.3f", s.mean_cdi), b->p.cdi).c_str(),
                    cell(Format("%.1f%%", 100.0 * s.mean_question_rate), b->p.question_rate).c_str());
      out << line;
    }
  }
  if (report.word_count_p) out << "\nWord count, treatment vs control: p = " << Format("%.3f", *report.word_count_p) << "\n";
  return out.str();
}

}  // namespace draftwatch::analysis
