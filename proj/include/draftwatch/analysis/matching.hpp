#pragma once

#include <string_view>
#include <vector>

#include "draftwatch/service/interaction.hpp"

namespace draftwatch::analysis {

using service::Interaction;

enum class RiskBand { kAtRisk, kNotAtRisk };
enum class BandMode { kBinary, kDecile };

std::string_view RiskBandName(RiskBand b);
BandMode ParseBandMode(std::string_view name);  // "binary" | "decile"

// at_risk iff context_score > warn_threshold, the same rule the context
// warning uses.
RiskBand ClassifyRiskBand(double context_score, double warn_threshold);

struct MatchOptions {
  double warn_threshold = 0.55;
  BandMode band_mode = BandMode::kBinary;
};

// Matching key for "same level of prior risk". Binary: the risk band.
// Decile: floor(10 * score) refined by the risk band, so a decile that
// straddles the threshold never pairs across it.
int MatchBand(double context_score, const MatchOptions& options);

// Drafting time in seconds: last snapshot t - first snapshot t.
// Throws NoSnapshots.
double DraftingSeconds(const Interaction& in);

struct AdjustedPoint {
  double t_adj = 0.0;  // seconds since the first snapshot
  double score = 0.0;
};

// Throws NoSnapshots.
std::vector<AdjustedPoint> AdjustedSeries(const Interaction& in);

struct MatchedPair {
  Interaction treatment;
  Interaction control;
};

struct MatchResult {
  std::vector<MatchedPair> pairs;
  std::vector<Interaction> discarded;
};

// Greedy 1:1 matching within (author, band). Controls are visited in
// (started_at, id) order; each takes the unmatched treatment interaction
// that is Phase 2 if any Phase 2 candidate remains, then closest in context
// score, then earliest, then lowest id. Everything left unmatched is
// discarded.
MatchResult BuildMatchedPairs(const std::vector<Interaction>& interactions, const MatchOptions& options);

}  // namespace draftwatch::analysis
