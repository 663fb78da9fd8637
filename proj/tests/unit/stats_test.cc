#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "draftwatch/analysis/stats.hpp"
#include "draftwatch/error.hpp"
#include "oracles.hpp"

namespace draftwatch::analysis {
namespace {

using V = std::vector<double>;

Errc CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::kInvalidArgument;
}

TEST(Ranks, AverageTies) {
  EXPECT_EQ(AverageRanks(V{10, 20, 20, 30}), (V{1, 2.5, 2.5, 4}));
  EXPECT_EQ(AverageRanks(V{5, 5, 5}), (V{2, 2, 2}));
  EXPECT_TRUE(AverageRanks(V{}).empty());
}

TEST(Spearman, Examples) {
  EXPECT_DOUBLE_EQ(SpearmanRho(V{1, 2, 3, 4}, V{2, 4, 6, 8}), 1.0);
  EXPECT_DOUBLE_EQ(SpearmanRho(V{1, 2, 3, 4}, V{8, 6, 4, 2}), -1.0);
  const V xs{1, 2, 3, 4}, ys{1, 1, 2, 3};
  EXPECT_NEAR(SpearmanRho(xs, ys), oracle::HandSpearman(xs, ys), 1e-12);
  EXPECT_NEAR(SpearmanRho(xs, ys), 0.9486832980505138, 1e-12);
}

TEST(Spearman, Errors) {
  EXPECT_EQ(CodeOf([] { SpearmanRho(V{1, 2, 3}, V{1, 2}); }), Errc::kLengthMismatch);
  EXPECT_EQ(CodeOf([] { SpearmanRho(V{1, 2}, V{1, 2}); }), Errc::kTooFew);
  EXPECT_EQ(CodeOf([] { SpearmanRho(V{1, 1, 1}, V{1, 2, 3}); }), Errc::kConstantInput);
}

TEST(Spearman, ExactPMatchesPermutationOracle) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> small(0, 4);
  for (std::size_t n = 3; n <= kSpearmanExactMaxN; ++n) {
    for (int rep = 0; rep < 4; ++rep) {
      V xs(n), ys(n);
      for (std::size_t i = 0; i < n; ++i) {
        xs[i] = small(rng);
        ys[i] = small(rng);
      }
      if (std::all_of(xs.begin(), xs.end(), [&](double v) { return v == xs[0]; }) ||
          std::all_of(ys.begin(), ys.end(), [&](double v) { return v == ys[0]; }))
        continue;
      const auto r = Spearman(xs, ys);
      EXPECT_NEAR(r.rho, oracle::HandSpearman(xs, ys), 1e-9);
      EXPECT_NEAR(r.p, oracle::BruteSpearmanP(xs, ys), 1e-9) << "n=" << n;
    }
  }
}

TEST(Spearman, LargeSampleUsesTApproximation) {
  V xs, ys;
  for (int i = 0; i < 40; ++i) {
    xs.push_back(i);
    ys.push_back((i * 7) % 40);
  }
  const auto r = Spearman(xs, ys);
  EXPECT_GT(r.p, 0.0);
  EXPECT_LE(r.p, 1.0);
  V perfect(xs);
  EXPECT_LT(Spearman(xs, perfect).p, 1e-10);
}

TEST(MannWhitney, Examples) {
  const auto r = MannWhitney(V{1, 2, 3}, V{10, 11, 12});
  EXPECT_DOUBLE_EQ(r.u, 0.0);
  EXPECT_NEAR(r.p, 0.1, 1e-12);
  EXPECT_NEAR(MannWhitney(V{1, 2, 3}, V{1, 2, 3}).p, 1.0, 1e-12);
  EXPECT_EQ(CodeOf([] { MannWhitney(V{}, V{1}); }), Errc::kEmptySample);
  EXPECT_EQ(CodeOf([] { MannWhitney(V{1}, V{}); }), Errc::kEmptySample);
}

TEST(MannWhitney, ExactMatchesEnumerationWithTies) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> val(0, 5);
  for (std::size_t n = 2; n <= 12; ++n) {
    for (std::size_t m = 1; m < n; ++m) {
      V a(m), b(n - m);
      for (auto& x : a) x = val(rng);
      for (auto& x : b) x = val(rng);
      const auto r = MannWhitneyExact(a, b);
      EXPECT_DOUBLE_EQ(r.u, oracle::PairwiseU(a, b));
      EXPECT_NEAR(r.p, oracle::BruteMannWhitneyP(a, b), 1e-9);
    }
  }
}

TEST(MannWhitney, NormalAgreesWithExactAtFourteen) {
  std::mt19937 rng(5);
  std::normal_distribution<double> d(0, 1);
  for (int rep = 0; rep < 30; ++rep) {
    V a(7), b(7);
    for (auto& x : a) x = d(rng);
    for (auto& x : b) x = d(rng) + 0.5;
    EXPECT_NEAR(MannWhitneyNormal(a, b).p, MannWhitneyExact(a, b).p, 0.02);
  }
}

TEST(MannWhitney, DispatchesOnSize) {
  V a(8), b(8);
  for (int i = 0; i < 8; ++i) {
    a[i] = i;
    b[i] = i + 3.5;
  }
  EXPECT_EQ(MannWhitney(a, b).p, MannWhitneyNormal(a, b).p);
  const V a7(a.begin(), a.begin() + 7), b7(b.begin(), b.begin() + 7);
  EXPECT_EQ(MannWhitney(a7, b7).p, MannWhitneyExact(a7, b7).p);
}

TEST(MannWhitney, AllTiedIsNoEvidence) {
  V a(10, 1.0), b(10, 1.0);
  EXPECT_DOUBLE_EQ(MannWhitney(a, b).p, 1.0);
}

TEST(Fisher, Examples) {
  EXPECT_NEAR(FisherExact(5, 5, 5, 5), 1.0, 1e-12);
  EXPECT_NEAR(FisherExact(10, 0, 0, 10), 2.0 / 184756.0, 1e-15);
  EXPECT_EQ(CodeOf([] { FisherExact(0, 0, 3, 4); }), Errc::kDegenerateMargins);
  EXPECT_EQ(CodeOf([] { FisherExact(1, 0, 3, 0); }), Errc::kDegenerateMargins);
}

TEST(Fisher, MatchesEnumerationUpToTwelve) {
  for (std::uint64_t n = 2; n <= 12; ++n)
    for (std::uint64_t a = 0; a <= n; ++a)
      for (std::uint64_t b = 0; a + b <= n; ++b)
        for (std::uint64_t c = 0; a + b + c <= n; ++c) {
          const std::uint64_t d = n - a - b - c;
          if (a + b == 0 || c + d == 0 || a + c == 0 || b + d == 0) continue;
          ASSERT_NEAR(FisherExact(a, b, c, d), oracle::BruteFisherP(a, b, c, d), 1e-9)
              << a << " " << b << " " << c << " " << d;
        }
}

TEST(Fisher, LargeCountsStayFinite) {
  const double p = FisherExact(300, 200, 250, 250);
  EXPECT_GT(p, 0.0);
  EXPECT_LT(p, 0.01);
}

TEST(Mean, Basic) {
  EXPECT_DOUBLE_EQ(Mean(V{1, 2, 3, 6}), 3.0);
  EXPECT_DOUBLE_EQ(Mean(V{}), 0.0);
}

}  // namespace
}  // namespace draftwatch::analysis
