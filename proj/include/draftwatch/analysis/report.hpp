#pragma once

#include <optional>
#include <string>
#include <vector>

#include "draftwatch/analysis/matching.hpp"
#include "draftwatch/analysis/stats.hpp"
#include "json.hpp"

namespace draftwatch::analysis {

// One (band, condition) cell.
struct ConditionSummary {
  std::size_t interactions = 0;
  double mean_draft_seconds = 0.0;

  // Spearman over all (adjusted timestamp, score) points pooled across the
  // cell's interactions; empty when not computable (see trend_note).
  std::size_t trend_points = 0;
  std::optional<SpearmanResult> trend;
  std::string trend_note;
  // Mean of per-interaction rho over interactions where it is defined.
  std::optional<double> mean_interaction_rho;
  std::size_t rho_interactions = 0;

  // Linguistic metrics of the final draft, over interactions whose final
  // draft has at least one word.
  std::size_t linguistic_interactions = 0;
  std::size_t formal_count = 0;
  double formality_rate = 0.0;
  double mean_f_factor = 0.0;
  double mean_cdi = 0.0;
  double mean_question_rate = 0.0;
  double mean_word_count = 0.0;

  // Per-interaction values behind the comparisons.
  std::vector<double> draft_seconds;
  std::vector<double> interaction_rhos;
  std::vector<double> f_factors;
  std::vector<double> cdis;
  std::vector<double> question_rates;
  std::vector<double> word_counts;
};

// Treatment-versus-control two-sided p-values; empty when the test does not
// apply (empty sample, degenerate margins).
struct Comparisons {
  std::optional<double> drafting_time;  // Mann-Whitney
  std::optional<double> formality;      // Fisher exact on formal/informal counts
  std::optional<double> f_factor;       // Mann-Whitney, raw F
  std::optional<double> cdi;            // Mann-Whitney
  std::optional<double> question_rate;  // Mann-Whitney
  std::optional<double> word_count;     // Mann-Whitney
  std::optional<double> trend;          // Mann-Whitney on per-interaction rho
};

struct BandReport {
  RiskBand band = RiskBand::kAtRisk;
  std::size_t pairs = 0;
  ConditionSummary treatment;
  ConditionSummary control;
  Comparisons p;
};

struct AnalysisReport {
  double warn_threshold = 0.55;
  std::size_t pairs = 0;
  BandReport at_risk;
  BandReport not_at_risk;
  std::optional<double> word_count_p;  // all pairs, Mann-Whitney

  const BandReport& band(RiskBand b) const { return b == RiskBand::kAtRisk ? at_risk : not_at_risk; }
};

inline constexpr double kSignificance = 0.05;

// Stratifies pairs by the risk band of their context scores and runs every
// comparison. Throws NoPairs.
AnalysisReport AnalyzePairs(const std::vector<MatchedPair>& pairs, double warn_threshold);

nlohmann::json ReportToJson(const AnalysisReport& report);

// Aligned plain-text tables: drafting time, time/risk correlation, and
// linguistic strategies, each by band and condition.
std::string ReportTable(const AnalysisReport& report);

}  // namespace draftwatch::analysis
