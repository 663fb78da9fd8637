#include "draftwatch/analysis/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <numeric>

#include "draftwatch/error.hpp"

namespace draftwatch::analysis {
namespace {

double Pearson(std::span<const double> x, std::span<const double> y) {
  const double mx = Mean(x), my = Mean(y);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw Error(Errc::kConstantInput, "correlation of a constant series");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

void CheckPaired(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw Error(Errc::kLengthMismatch, "samples differ in length");
  if (xs.size() < 3) throw Error(Errc::kTooFew, "need at least 3 observations");
}

void CheckSamples(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error(Errc::kEmptySample, "Mann-Whitney needs two non-empty samples");
}

double UStatistic(std::span<const double> a, std::span<const double> b) {
  double u = 0.0;
  for (double x : a) {
    for (double y : b) u += x > y ? 1.0 : (x == y ? 0.5 : 0.0);
  }
  return u;
}

double LogChoose(double n, double k) { return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1); }

}  // namespace

double Mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

std::vector<double> AverageRanks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

double SpearmanRho(std::span<const double> xs, std::span<const double> ys) {
  CheckPaired(xs, ys);
  const auto rx = AverageRanks(xs);
  const auto ry = AverageRanks(ys);
  return Pearson(rx, ry);
}

SpearmanResult Spearman(std::span<const double> xs, std::span<const double> ys) {
  CheckPaired(xs, ys);
  const auto rx = AverageRanks(xs);
  auto ry = AverageRanks(ys);
  SpearmanResult r;
  r.rho = Pearson(rx, ry);
  const std::size_t n = xs.size();
  if (n <= kSpearmanExactMaxN) {
    // Under the null every pairing of the y ranks with the x ranks is
    // equally likely; the Pearson denominator is permutation-invariant, so
    // compare the cross products directly.
    const double mx = Mean(rx), my = Mean(ry);
    auto cross = [&](const std::vector<double>& y) {
      double s = 0;
      for (std::size_t i = 0; i < n; ++i) s += (rx[i] - mx) * (y[i] - my);
      return s;
    };
    const double observed = std::abs(cross(ry));
    const double tol = 1e-9 * std::max(1.0, observed);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<double> permuted(n);
    std::uint64_t extreme = 0, total = 0;
    do {
      for (std::size_t i = 0; i < n; ++i) permuted[i] = ry[perm[i]];
      if (std::abs(cross(permuted)) >= observed - tol) ++extreme;
      ++total;
    } while (std::next_permutation(perm.begin(), perm.end()));
    r.p = static_cast<double>(extreme) / static_cast<double>(total);
  } else if (std::abs(r.rho) >= 1.0) {
    r.p = 0.0;
  } else {
    const double df = static_cast<double>(n - 2);
    const double t = r.rho * std::sqrt(df / (1.0 - r.rho * r.rho));
    boost::math::students_t dist(df);
    r.p = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))));
  }
  return r;
}

MannWhitneyResult MannWhitney(std::span<const double> a, std::span<const double> b) {
  CheckSamples(a, b);
  return a.size() + b.size() <= kMannWhitneyExactMaxN ? MannWhitneyExact(a, b) : MannWhitneyNormal(a, b);
}

MannWhitneyResult MannWhitneyExact(std::span<const double> a, std::span<const double> b) {
  CheckSamples(a, b);
  const std::size_t m = a.size(), n = a.size() + b.size();
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  // Doubled mid-ranks are integers, so the rank-sum distribution is exact.
  std::vector<std::int64_t> ranks2;
  for (double r : AverageRanks(pooled)) ranks2.push_back(std::llround(2.0 * r));
  const std::int64_t max_sum = std::accumulate(ranks2.begin(), ranks2.end(), std::int64_t{0});

  // counts[k][s]: number of k-subsets whose doubled rank sum is s.
  std::vector<std::vector<double>> counts(m + 1, std::vector<double>(max_sum + 1, 0.0));
  counts[0][0] = 1.0;
  for (std::size_t item = 0; item < n; ++item) {
    for (std::size_t k = std::min(item + 1, m); k >= 1; --k) {
      for (std::int64_t s = max_sum; s >= ranks2[item]; --s) counts[k][s] += counts[k - 1][s - ranks2[item]];
    }
  }
  std::int64_t observed = 0;
  for (std::size_t i = 0; i < m; ++i) observed += ranks2[i];
  const std::int64_t centre2 = static_cast<std::int64_t>(m * (n + 1));  // 2 * E[rank sum]
  const std::int64_t dev = std::llabs(observed - centre2);
  double extreme = 0.0, total = 0.0;
  for (std::int64_t s = 0; s <= max_sum; ++s) {
    total += counts[m][s];
    if (std::llabs(s - centre2) >= dev) extreme += counts[m][s];
  }
  MannWhitneyResult r;
  r.u = static_cast<double>(observed) / 2.0 - static_cast<double>(m * (m + 1)) / 2.0;
  r.p = std::min(1.0, extreme / total);
  return r;
}

MannWhitneyResult MannWhitneyNormal(std::span<const double> a, std::span<const double> b) {
  CheckSamples(a, b);
  const double m = static_cast<double>(a.size()), k = static_cast<double>(b.size()), n = m + k;
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::sort(pooled.begin(), pooled.end());
  double tie_term = 0.0;
  for (std::size_t i = 0; i < pooled.size();) {
    std::size_t j = i;
    while (j < pooled.size() && pooled[j] == pooled[i]) ++j;
    const double t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }
  MannWhitneyResult r;
  r.u = UStatistic(a, b);
  const double mean = m * k / 2.0;
  const double var = m * k / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
  if (var <= 0.0) {
    r.p = 1.0;
    return r;
  }
  const double z = std::max(0.0, std::abs(r.u - mean) - 0.5) / std::sqrt(var);
  r.p = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
  return r;
}

double FisherExact(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  const std::uint64_t row1 = a + b, row2 = c + d, col1 = a + c, col2 = b + d;
  if (row1 == 0 || row2 == 0 || col1 == 0 || col2 == 0) {
    throw Error(Errc::kDegenerateMargins, "2x2 table has an empty row or column");
  }
  const double total = static_cast<double>(row1 + row2);
  const double log_denominator = LogChoose(total, static_cast<double>(col1));
  auto log_p = [&](std::uint64_t x) {
    return LogChoose(static_cast<double>(row1), static_cast<double>(x)) +
           LogChoose(static_cast<double>(row2), static_cast<double>(col1 - x)) - log_denominator;
  };
  const std::uint64_t lo = col1 > row2 ? col1 - row2 : 0;
  const std::uint64_t hi = std::min(row1, col1);
  const double observed = log_p(a);
  // Relative slack so tables tied in probability with the observed one are
  // not lost to rounding.
  const double cutoff = observed + 1e-7;
  double p = 0.0;
  for (std::uint64_t x = lo; x <= hi; ++x) {
    const double lp = log_p(x);
    if (lp <= cutoff) p += std::exp(lp);
  }
  return std::min(1.0, p);
}

}  // namespace draftwatch::analysis
