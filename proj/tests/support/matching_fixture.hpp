#pragma once

#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "draftwatch/service/interaction.hpp"

namespace draftwatch::testing {

inline service::Interaction MakeInteraction(const std::string& id, const std::string& user, char condition, int phase,
                                            double score, double started_at) {
  service::Interaction in;
  in.id = id;
  in.user_id = user;
  in.post_id = "post-" + id;
  in.target_comment_id = "c1";
  in.condition = condition == 'T' ? service::Condition::kTreatment : service::Condition::kControl;
  in.phase = phase;
  in.context_score = service::RiskScore(score);
  in.started_at = started_at;
  in.snapshots.push_back({started_at, started_at, "", service::RiskScore(score), service::SnapshotKind::kContext});
  in.outcome = service::Outcome::kSubmitted;
  return in;
}

// 40 interactions. The first 23 are hand-built cases with known answers
// (listed in the comments); the rest are seeded filler for two more users.
//   u1 at-risk: c "m01" picks phase-2 "m03" over the closer phase-1 "m02";
//               c "m04" then takes "m02".
//   u1 not-at-risk: "m05" pairs with "m07"; "m06" is discarded.
//   u2 at-risk: "m10" picks "m08" (distance 0); "m09", "m12" discarded.
//   u2 not-at-risk: "m11" (0.55, boundary) pairs with "m13", not "m12" (0.56).
//   u3 controls only, u4 treatments only: all discarded.
//   u5: equal distance, earlier "m20" wins over "m19".
//   u6: equal distance, phase-2 "m23" wins over earlier phase-1 "m22".
inline std::vector<service::Interaction> MatchingFixture() {
  std::vector<service::Interaction> v = {
      MakeInteraction("m01", "u1", 'C', 2, 0.70, 10),  MakeInteraction("m02", "u1", 'T', 1, 0.71, 11),
      MakeInteraction("m03", "u1", 'T', 2, 0.90, 12),  MakeInteraction("m04", "u1", 'C', 2, 0.80, 20),
      MakeInteraction("m05", "u1", 'C', 2, 0.20, 30),  MakeInteraction("m06", "u1", 'C', 2, 0.30, 31),
      MakeInteraction("m07", "u1", 'T', 2, 0.25, 32),  MakeInteraction("m08", "u2", 'T', 2, 0.60, 40),
      MakeInteraction("m09", "u2", 'T', 2, 0.61, 41),  MakeInteraction("m10", "u2", 'C', 2, 0.60, 42),
      MakeInteraction("m11", "u2", 'C', 2, 0.55, 50),  MakeInteraction("m12", "u2", 'T', 2, 0.56, 51),
      MakeInteraction("m13", "u2", 'T', 2, 0.50, 52),  MakeInteraction("m14", "u3", 'C', 2, 0.10, 60),
      MakeInteraction("m15", "u3", 'C', 2, 0.90, 61),  MakeInteraction("m16", "u4", 'T', 2, 0.20, 70),
      MakeInteraction("m17", "u4", 'T', 2, 0.30, 71),  MakeInteraction("m18", "u5", 'C', 2, 0.75, 100),
      MakeInteraction("m19", "u5", 'T', 2, 0.625, 102), MakeInteraction("m20", "u5", 'T', 2, 0.875, 101),
      MakeInteraction("m21", "u6", 'C', 2, 0.75, 200), MakeInteraction("m22", "u6", 'T', 1, 0.625, 190),
      MakeInteraction("m23", "u6", 'T', 2, 0.875, 201),
  };
  std::mt19937 rng(42);
  for (int i = 24; i <= 40; ++i) {
    char id[8];
    std::snprintf(id, sizeof id, "m%02d", i);
    const std::string user = rng() % 2 ? "u7" : "u8";
    const char cond = rng() % 2 ? 'T' : 'C';
    const int phase = rng() % 3 == 0 ? 1 : 2;
    const double score = static_cast<double>(rng() % 1000) / 1000.0;
    v.push_back(MakeInteraction(id, user, cond, phase, score, 300.0 + i));
  }
  return v;
}

}  // namespace draftwatch::testing
