#include "draftwatch/analysis/matching.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "draftwatch/error.hpp"

namespace draftwatch::analysis {

std::string_view RiskBandName(RiskBand b) { return b == RiskBand::kAtRisk ? "at_risk" : "not_at_risk"; }

BandMode ParseBandMode(std::string_view name) {
  if (name == "binary") return BandMode::kBinary;
  if (name == "decile") return BandMode::kDecile;
  throw Error(Errc::kInvalidArgument, "unknown band mode '" + std::string(name) + "'");
}

RiskBand ClassifyRiskBand(double context_score, double warn_threshold) {
  return context_score > warn_threshold ? RiskBand::kAtRisk : RiskBand::kNotAtRisk;
}

int MatchBand(double context_score, const MatchOptions& options) {
  const int at_risk = ClassifyRiskBand(context_score, options.warn_threshold) == RiskBand::kAtRisk ? 1 : 0;
  if (options.band_mode == BandMode::kBinary) return at_risk;
  const int decile = std::clamp(static_cast<int>(std::floor(context_score * 10.0)), 0, 9);
  return decile * 2 + at_risk;
}

double DraftingSeconds(const Interaction& in) {
  if (in.snapshots.empty()) throw Error(Errc::kNoSnapshots, "interaction '" + in.id + "' has no snapshots");
  return in.snapshots.back().t - in.snapshots.front().t;
}

std::vector<AdjustedPoint> AdjustedSeries(const Interaction& in) {
  if (in.snapshots.empty()) throw Error(Errc::kNoSnapshots, "interaction '" + in.id + "' has no snapshots");
  const double t0 = in.snapshots.front().t;
  std::vector<AdjustedPoint> out;
  out.reserve(in.snapshots.size());
  for (const auto& s : in.snapshots) out.push_back({s.t - t0, s.score.value()});
  return out;
}

MatchResult BuildMatchedPairs(const std::vector<Interaction>& interactions, const MatchOptions& options) {
  struct Group {
    std::vector<std::size_t> controls;
    std::vector<std::size_t> treatments;
  };
  std::map<std::pair<std::string, int>, Group> groups;
  for (std::size_t i = 0; i < interactions.size(); ++i) {
    const auto& in = interactions[i];
    auto& g = groups[{in.user_id, MatchBand(in.context_score.value(), options)}];
    (in.condition == service::Condition::kControl ? g.controls : g.treatments).push_back(i);
  }

  auto earlier = [&](std::size_t a, std::size_t b) {
    const auto& x = interactions[a];
    const auto& y = interactions[b];
    return std::tie(x.started_at, x.id) < std::tie(y.started_at, y.id);
  };

  std::vector<bool> used(interactions.size(), false);
  MatchResult result;
  for (auto& [key, g] : groups) {
    std::sort(g.controls.begin(), g.controls.end(), earlier);
    for (std::size_t c : g.controls) {
      const double score = interactions[c].context_score.value();
      bool phase2_left = false;
      for (std::size_t t : g.treatments) phase2_left |= !used[t] && interactions[t].phase == 2;
      std::optional<std::size_t> best;
      auto rank = [&](std::size_t t) {
        const auto& in = interactions[t];
        return std::make_tuple(std::abs(in.context_score.value() - score), in.started_at, in.id);
      };
      for (std::size_t t : g.treatments) {
        if (used[t] || (phase2_left && interactions[t].phase != 2)) continue;
        if (!best || rank(t) < rank(*best)) best = t;
      }
      if (!best) continue;
      used[c] = used[*best] = true;
      result.pairs.push_back({interactions[*best], interactions[c]});
    }
  }
  for (std::size_t i = 0; i < interactions.size(); ++i) {
    if (!used[i]) result.discarded.push_back(interactions[i]);
  }
  return result;
}

}  // namespace draftwatch::analysis
