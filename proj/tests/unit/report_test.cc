#include <gtest/gtest.h>

#include "draftwatch/analysis/report.hpp"
#include "draftwatch/error.hpp"
#include "matching_fixture.hpp"

namespace draftwatch::analysis {
namespace {

using testing::MakeInteraction;

// An interaction whose drafts run from `start` for `seconds`, with scores
// moving linearly from the context score by `drift` over the draft.
Interaction Drafted(const std::string& id, char condition, double context, double start, double seconds, double drift,
                    const std::string& final_text) {
  auto in = MakeInteraction(id, "u", condition, 2, context, start);
  for (int k = 1; k <= 4; ++k) {
    const double frac = k / 4.0;
    in.snapshots.push_back({start + seconds * frac, start + seconds * frac, k == 4 ? final_text : "draft",
                            service::RiskScore(context + drift * frac), service::SnapshotKind::kReply});
  }
  return in;
}

std::vector<MatchedPair> Pairs() {
  std::vector<MatchedPair> out;
  for (int i = 0; i < 6; ++i) {
    const std::string n = std::to_string(i);
    out.push_back({Drafted("t" + n, 'T', 0.8, 100 * i, 200 + i, -0.1, "Could you explain why the plan fails?"),
                   Drafted("c" + n, 'C', 0.8, 100 * i + 50, 150 + i, 0.1, "You are wrong!")});
    out.push_back({Drafted("nt" + n, 'T', 0.2, 100 * i, 120 + i, -0.05, "The report describes the new policy."),
                   Drafted("nc" + n, 'C', 0.2, 100 * i + 50, 118 + i, -0.05, "I think it is fine.")});
  }
  return out;
}

TEST(Report, NoPairs) { EXPECT_THROW(AnalyzePairs({}, 0.55), Error); }

TEST(Report, StratifiesAndSummarizes) {
  const auto report = AnalyzePairs(Pairs(), 0.55);
  EXPECT_EQ(report.pairs, 12u);
  EXPECT_EQ(report.at_risk.pairs, 6u);
  EXPECT_EQ(report.not_at_risk.pairs, 6u);
  EXPECT_NEAR(report.at_risk.treatment.mean_draft_seconds, 202.5, 1e-9);
  EXPECT_NEAR(report.at_risk.control.mean_draft_seconds, 152.5, 1e-9);
  ASSERT_TRUE(report.at_risk.p.drafting_time);
  EXPECT_NEAR(*report.at_risk.p.drafting_time,
              MannWhitney(report.at_risk.treatment.draft_seconds, report.at_risk.control.draft_seconds).p, 1e-15);
  EXPECT_LT(*report.at_risk.p.drafting_time, 0.05);

  ASSERT_TRUE(report.at_risk.treatment.trend);
  ASSERT_TRUE(report.at_risk.control.trend);
  EXPECT_LT(report.at_risk.treatment.trend->rho, 0);
  EXPECT_GT(report.at_risk.control.trend->rho, 0);
  EXPECT_EQ(report.at_risk.treatment.trend_points, 30u);
  ASSERT_TRUE(report.at_risk.treatment.mean_interaction_rho);
  EXPECT_NEAR(*report.at_risk.treatment.mean_interaction_rho, -1.0, 1e-12);

  EXPECT_EQ(report.at_risk.treatment.linguistic_interactions, 6u);
  EXPECT_NEAR(report.at_risk.treatment.mean_question_rate, 1.0, 1e-12);
  EXPECT_NEAR(report.at_risk.control.mean_question_rate, 0.0, 1e-12);
  EXPECT_TRUE(report.word_count_p);
}

TEST(Report, DegenerateCellsReportNotApplicable) {
  std::vector<MatchedPair> pairs = {
      {MakeInteraction("t", "u", 'T', 2, 0.8, 1), MakeInteraction("c", "u", 'C', 2, 0.8, 2)}};
  const auto report = AnalyzePairs(pairs, 0.55);
  EXPECT_FALSE(report.at_risk.treatment.trend);
  EXPECT_FALSE(report.at_risk.treatment.trend_note.empty());
  EXPECT_FALSE(report.at_risk.p.formality);
  EXPECT_EQ(report.at_risk.treatment.linguistic_interactions, 0u);
  EXPECT_EQ(report.not_at_risk.pairs, 0u);
  EXPECT_FALSE(report.not_at_risk.p.drafting_time);
  const auto j = ReportToJson(report);
  EXPECT_TRUE(j["strata"][0]["p"]["formality"].is_null());
  EXPECT_TRUE(j["strata"][0]["treatment"]["spearman"].contains("na"));
}

TEST(Report, JsonAndTable) {
  const auto report = AnalyzePairs(Pairs(), 0.55);
  const auto j = ReportToJson(report);
  EXPECT_EQ(j["pairs"], 12);
  EXPECT_EQ(j["interactions"], 24);
  EXPECT_EQ(j["strata"][0]["band"], "at_risk");
  EXPECT_EQ(j["strata"][1]["band"], "not_at_risk");
  EXPECT_DOUBLE_EQ(j["strata"][0]["treatment"]["mean_draft_seconds"].get<double>(), 202.5);
  const std::string table = ReportTable(report);
  EXPECT_NE(table.find("Drafting time"), std::string::npos);
  EXPECT_NE(table.find("Spearman"), std::string::npos);
  EXPECT_NE(table.find("formality rate"), std::string::npos);
  EXPECT_NE(table.find("202.5 *"), std::string::npos);
}

TEST(Report, BandThresholdIsConfigurable) {
  const auto report = AnalyzePairs(Pairs(), 0.9);
  EXPECT_EQ(report.at_risk.pairs, 0u);
  EXPECT_EQ(report.not_at_risk.pairs, 12u);
}

}  // namespace
}  // namespace draftwatch::analysis
