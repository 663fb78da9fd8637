#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace draftwatch::analysis {

// Exact-vs-approximate cutovers.
inline constexpr std::size_t kSpearmanExactMaxN = 9;
inline constexpr std::size_t kMannWhitneyExactMaxN = 14;

struct SpearmanResult {
  double rho = 0.0;
  double p = 1.0;  // two-sided
};

struct MannWhitneyResult {
  double u = 0.0;  // U of the first sample: #(a > b) + 0.5 #(a == b)
  double p = 1.0;  // two-sided
};

// 1-based ranks, ties share the average of the ranks they span.
std::vector<double> AverageRanks(std::span<const double> values);

// Spearman's rho as the Pearson correlation of average ranks. Throws
// LengthMismatch, TooFew (n < 3) or ConstantInput.
double SpearmanRho(std::span<const double> xs, std::span<const double> ys);

// rho with a two-sided p: exact over all n! rank permutations for
// n <= kSpearmanExactMaxN, Student-t approximation with n - 2 degrees of
// freedom above.
SpearmanResult Spearman(std::span<const double> xs, std::span<const double> ys);

// Exact null distribution (mid-rank sums over all C(n, |a|) splits) when
// |a| + |b| <= kMannWhitneyExactMaxN; otherwise the normal approximation
// with tie and continuity corrections. Throws EmptySample.
MannWhitneyResult MannWhitney(std::span<const double> a, std::span<const double> b);
MannWhitneyResult MannWhitneyExact(std::span<const double> a, std::span<const double> b);
MannWhitneyResult MannWhitneyNormal(std::span<const double> a, std::span<const double> b);

// Two-sided Fisher exact test on [[a, b], [c, d]]: sum of the hypergeometric
// probabilities of all tables with the same margins that are no more likely
// than the observed one. Throws DegenerateMargins when a margin is zero.
double FisherExact(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d);

double Mean(std::span<const double> xs);

}  // namespace draftwatch::analysis
