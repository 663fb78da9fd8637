#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "draftwatch/error.hpp"
#include "draftwatch/forecast/features.hpp"
#include "draftwatch/forecast/forecaster.hpp"
#include "draftwatch/text/lexicon.hpp"
#include "test_support.hpp"

namespace draftwatch::forecast {
namespace {

CommentChain Chain(std::initializer_list<const char*> texts) {
  std::vector<Comment> cs;
  int i = 0;
  for (const char* t : texts) cs.push_back({"c" + std::to_string(++i), "author" + std::to_string(i), t, 1000.0 * i});
  return CommentChain(std::move(cs));
}

std::vector<std::string> FixtureLines(const char* name) {
  return text::DataLines(testing::Slurp(testing::FixtureDir() / name));
}

TEST(Features, EmptyTextIsAllZero) {
  const FeatureExtractor fx;
  for (double v : fx.Extract("").values) EXPECT_EQ(v, 0.0);
  for (double v : fx.Extract("   ").values) EXPECT_EQ(v, 0.0);
}

TEST(Features, DirectLexiconHits) {
  const auto fv = FeatureExtractor().Extract("You ALWAYS do this!");
  EXPECT_GT(fv[Feature::kSecondPersonRate], 0.0);
  EXPECT_GT(fv[Feature::kAbsolutesRate], 0.0);
  EXPECT_GT(fv[Feature::kExclamationDensity], 0.0);
  EXPECT_GT(fv[Feature::kAllCapsTokenRate], 0.0);
}

TEST(Features, ExactRatesForFourTokenSentence) {
  // you / always / lie / "." : four tokens, one sentence of three words.
  const auto fv = FeatureExtractor().Extract("You always lie.");
  EXPECT_DOUBLE_EQ(fv[Feature::kSecondPersonRate], 0.25);
  EXPECT_DOUBLE_EQ(fv[Feature::kAbsolutesRate], 0.25);
  EXPECT_DOUBLE_EQ(fv[Feature::kHostileLexiconRate], 0.25);
  EXPECT_DOUBLE_EQ(fv[Feature::kProfanityRate], 0.0);
  EXPECT_DOUBLE_EQ(fv[Feature::kExclamationDensity], 0.0);
  EXPECT_DOUBLE_EQ(fv[Feature::kQuestionDensity], 0.0);
  EXPECT_DOUBLE_EQ(fv[Feature::kAllCapsTokenRate], 0.0);
  EXPECT_DOUBLE_EQ(fv[Feature::kMeanSentenceLength], 3.0 / 50.0);
}

TEST(Features, SentenceDensities) {
  const auto fv = FeatureExtractor().Extract("Really? Yes! Maybe not.");
  EXPECT_DOUBLE_EQ(fv[Feature::kQuestionDensity], 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(fv[Feature::kExclamationDensity], 1.0 / 3.0);
  // really ? yes ! maybe not .  -> 7 tokens, one hedge, one negation
  EXPECT_DOUBLE_EQ(fv[Feature::kHedgeRate], 1.0 / 7.0);
  EXPECT_DOUBLE_EQ(fv[Feature::kNegationRate], 1.0 / 7.0);
}

TEST(Features, AllRatesInUnitIntervalOnRandomText) {
  const FeatureExtractor fx;
  const std::vector<std::string> pieces = {"you", "ALWAYS", "idiot", "damn", "maybe", "not", "the", "!", "?", ".",
                                           "...", ",", "WOW", "x", "caf\xC3\xA9", "don't", "\n"};
  std::mt19937 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    std::string s;
    const int n = std::uniform_int_distribution<int>(0, 60)(rng);
    for (int i = 0; i < n; ++i) s += pieces[rng() % pieces.size()] + (rng() % 3 ? " " : "");
    const auto fv = fx.Extract(s);
    for (double v : fv.values) {
      EXPECT_GE(v, 0.0) << s;
      EXPECT_LE(v, 1.0) << s;
    }
    EXPECT_EQ(fv.values, fx.Extract(s).values);
  }
}

TEST(Features, NamesRoundTrip) {
  for (std::size_t i = 0; i < kNumFeatures; ++i) {
    auto f = FeatureFromName(kFeatureNames[i]);
    ASSERT_TRUE(f.has_value());
    EXPECT_EQ(static_cast<std::size_t>(*f), i);
  }
  EXPECT_FALSE(FeatureFromName("nope").has_value());
}

TEST(CommentChain, Validation) {
  EXPECT_THROW(
      {
        try {
          CommentChain({});
        } catch (const Error& e) {
          EXPECT_EQ(e.code(), Errc::kEmptyChain);
          throw;
        }
      },
      Error);
  EXPECT_THROW(CommentChain({{"a", "u", "x", 0}, {"a", "v", "y", 1}}), Error);
  EXPECT_THROW(CommentChain({{"a", "u", "  ", 0}}), Error);
  const auto c = Chain({"one"}).Append({"z", "u", "two", 5});
  EXPECT_EQ(c.size(), 2u);
  EXPECT_EQ(c.back().id, "z");
}

TEST(RiskScore, RejectsOutOfRange) {
  EXPECT_NO_THROW(RiskScore(0.0));
  EXPECT_NO_THROW(RiskScore(1.0));
  EXPECT_THROW(RiskScore(-0.01), Error);
  EXPECT_THROW(RiskScore(1.01), Error);
  EXPECT_THROW(RiskScore(std::nan("")), Error);
}

TEST(ForecasterConfig, EmbeddedMatchesDocumentedSigns) {
  const auto cfg = ForecasterConfig::Embedded();
  EXPECT_EQ(cfg.half_life, 2.0);
  auto w = [&](Feature f) { return cfg.weights[static_cast<std::size_t>(f)]; };
  for (Feature f : {Feature::kHostileLexiconRate, Feature::kProfanityRate, Feature::kAllCapsTokenRate,
                    Feature::kAbsolutesRate, Feature::kExclamationDensity, Feature::kSecondPersonRate}) {
    EXPECT_GT(w(f), 0.0);
  }
  EXPECT_LT(w(Feature::kQuestionDensity), 0.0);
  EXPECT_LT(w(Feature::kHedgeRate), 0.0);
}

TEST(ForecasterConfig, ParseErrors) {
  auto code = [](std::string_view text) {
    try {
      ForecasterConfig::Parse(text);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::kInvalidArgument;
  };
  EXPECT_EQ(code("bias = nope"), Errc::kBadConfig);
  EXPECT_EQ(code("colour = 3"), Errc::kBadConfig);
  EXPECT_EQ(code("weight.unknown = 1"), Errc::kBadConfig);
  EXPECT_EQ(code("half_life = 0"), Errc::kBadConfig);
  EXPECT_EQ(code("just words"), Errc::kBadConfig);
  const auto cfg = ForecasterConfig::Parse("# c\nbias = 0.5\nhalf_life = 3\nweight.hedge_rate = -2\n");
  EXPECT_EQ(cfg.bias, 0.5);
  EXPECT_EQ(cfg.half_life, 3.0);
  EXPECT_EQ(cfg.weights[static_cast<std::size_t>(Feature::kHedgeRate)], -2.0);
}

TEST(ReferenceForecaster, NeutralChainBelowThreshold) {
  const ReferenceForecaster f;
  EXPECT_LT(f.ScoreChain(Chain({"The library opens at nine."})).value(), 0.55);
}

TEST(ReferenceForecaster, HostileTailAboveThreshold) {
  const ReferenceForecaster f;
  const auto chain = Chain({"The library opens at nine.", "You are a pathetic idiot and a liar!",
                            "Shut up, you stupid clown. You ALWAYS lie!"});
  EXPECT_GT(f.ScoreChain(chain).value(), 0.55);
}

TEST(ReferenceForecaster, CalibrationCorpora) {
  const ReferenceForecaster f;
  const auto neutral = FixtureLines("calibration_neutral.txt");
  const auto hostile = FixtureLines("calibration_hostile.txt");
  ASSERT_GE(neutral.size(), 10u);
  ASSERT_GE(hostile.size(), 10u);
  for (const auto& line : neutral) EXPECT_LT(f.ScoreChain(CommentChain({{"x", "u", line, 0}})).value(), 0.55) << line;
  for (const auto& line : hostile) EXPECT_GT(f.ScoreChain(CommentChain({{"x", "u", line, 0}})).value(), 0.55) << line;
}

TEST(ReferenceForecaster, EmptyDraftIsContextScore) {
  const ReferenceForecaster f;
  const auto chain = Chain({"Some context here.", "And a reply."});
  EXPECT_EQ(f.ScoreWithDraft(chain, "").value(), f.ScoreChain(chain).value());
  EXPECT_EQ(f.ScoreWithDraft(chain, "  \n").value(), f.ScoreChain(chain).value());
}

TEST(ReferenceForecaster, DraftEqualsTrailingComment) {
  const ReferenceForecaster f;
  const auto chain = Chain({"Some context here.", "You are wrong!"});
  const std::string draft = "Maybe, but I think the data suggest otherwise?";
  EXPECT_DOUBLE_EQ(f.ScoreWithDraft(chain, draft).value(),
                   f.ScoreChain(chain.Append({"draft", "me", draft, 9999})).value());
}

TEST(ReferenceForecaster, HostileDraftRaisesNeutralChain) {
  const ReferenceForecaster f;
  const auto chain = Chain({"The library opens at nine."});
  EXPECT_GT(f.ScoreWithDraft(chain, "You idiot, you ALWAYS lie! Shut up!").value(), f.ScoreChain(chain).value());
}

TEST(ReferenceForecaster, QuestionDraftDoesNotRaiseTenseChain) {
  const ReferenceForecaster f;
  const auto chain = Chain({"You are a liar.", "No, YOU are the idiot here!"});
  EXPECT_LE(f.ScoreWithDraft(chain, "Could you explain which part you disagree with?").value(),
            f.ScoreChain(chain).value());
}

TEST(ReferenceForecaster, RecencyWeighting) {
  const ReferenceForecaster f;
  const auto hostile_last = Chain({"The library opens at nine.", "You idiot, you ALWAYS lie!"});
  const auto hostile_first = Chain({"You idiot, you ALWAYS lie!", "The library opens at nine."});
  EXPECT_GT(f.ScoreChain(hostile_last).value(), f.ScoreChain(hostile_first).value());
}

TEST(ReferenceForecaster, AppendingTheAggregateLeavesScoreUnchanged) {
  const ReferenceForecaster f;
  const auto elems = f.ChainFeatures(Chain({"You idiot!", "Maybe not?", "The library opens at nine."}));
  // Weighted aggregate with the documented weights.
  FeatureVector agg;
  double wsum = 0;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const double w = std::pow(0.5, static_cast<double>(elems.size() - 1 - i) / 2.0);
    wsum += w;
    for (std::size_t k = 0; k < kNumFeatures; ++k) agg.values[k] += w * elems[i].values[k];
  }
  for (double& v : agg.values) v /= wsum;
  auto extended = elems;
  extended.push_back(agg);
  EXPECT_NEAR(f.ScoreFeatures(extended).value(), f.ScoreFeatures(elems).value(), 1e-12);
}

TEST(ReferenceForecaster, MonotoneInEachFeatureOfFinalElement) {
  const ReferenceForecaster f;
  const auto& w = f.config().weights;
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<FeatureVector> elems(1 + trial % 4);
    for (auto& e : elems)
      for (double& v : e.values) v = u(rng) * 0.5;
    const double base = f.ScoreFeatures(elems).value();
    for (std::size_t k = 0; k < kNumFeatures; ++k) {
      auto bumped = elems;
      bumped.back().values[k] += 0.25;
      const double s = f.ScoreFeatures(bumped).value();
      if (w[k] > 0) {
        EXPECT_GE(s, base);
      } else if (w[k] < 0) {
        EXPECT_LE(s, base);
      }
    }
  }
}

TEST(ReferenceForecaster, PreparedScorerMatchesDirectScoring) {
  const ReferenceForecaster f;
  const auto chain = Chain({"You are wrong.", "Am I?"});
  const auto scorer = f.Prepare(chain);
  EXPECT_EQ(scorer->Context().value(), f.ScoreChain(chain).value());
  for (const char* d : {"", "ok", "You idiot!", "Could you explain?"}) {
    EXPECT_DOUBLE_EQ(scorer->Score(d).value(), f.ScoreWithDraft(chain, d).value());
  }
}

TEST(ReferenceForecaster, ConcurrentScoringIsConsistent) {
  const ReferenceForecaster f;
  const auto chain = Chain({"You are wrong.", "Am I, you clown?"});
  const double expected = f.ScoreWithDraft(chain, "Maybe we disagree!").value();
  std::vector<std::thread> threads;
  std::atomic<int> mismatches{0};
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&] {
      for (int i = 0; i < 200; ++i) {
        if (f.ScoreWithDraft(chain, "Maybe we disagree!").value() != expected) ++mismatches;
      }
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(mismatches.load(), 0);
}

TEST(ReferenceForecaster, EmptyChainRejected) {
  const ReferenceForecaster f;
  EXPECT_THROW(f.ScoreFeatures({}), Error);
}

}  // namespace
}  // namespace draftwatch::forecast
