#pragma once

// Order-statistic expectations and sub-Gaussian concentration checks.
//
// For n uniform points on [-1, 1], the k-th order statistic maps to a
// Beta(k, n + 1 - k) variable on [0, 1], so E[X^(k)] = -1 + 2k/(n + 1).
// After the coordinate sort of an m^d cloud, the point assigned to cell
// (i_1, ..., i_d) has, on axis k, expectation
//   -1 + (2 i_k m^{d-k} - m^{d-k} + 1) / (m^{d-k+1} + 1),
// which always lies inside cell i_k.  A Beta(a, b) variable is
// 1/(4 (a + b + 1))-sub-Gaussian, giving the two-sided tail bound
// min(1, 2 exp(-t^2 / (2 sigma^2))).  deviation_experiment measures the worst
// sorted-point deviation from its expectation against the n^{-1/(3d)}
// threshold that the union bound makes overwhelmingly safe at large n.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rgg/geometry.hpp"
#include "rgg/ordering.hpp"
#include "rgg/parallel.hpp"

namespace rgg {

// E[X^(k)] for the k-th of n uniform order statistics on [-1, 1]; both
// 1-based, 1 <= k <= n.
inline double order_stat_expectation(std::size_t k, std::size_t n) {
  if (k < 1 || k > n) throw std::invalid_argument("order_stat_expectation: need 1 <= k <= n");
  return -1.0 + 2.0 * static_cast<double>(k) / (static_cast<double>(n) + 1.0);
}

// Expected axis-k coordinate of the point sorted into a cell with label i_k
// on axis k (all 1-based; axes are numbered by sort depth, k = 1 first).
inline double multiindex_expectation(std::size_t i_k, std::size_t k, std::size_t m, std::size_t d) {
  if (d < 1) throw std::invalid_argument("multiindex_expectation: d must be positive");
  if (k < 1 || k > d) throw std::invalid_argument("multiindex_expectation: need 1 <= k <= d");
  if (m < 1 || i_k < 1 || i_k > m) {
    throw std::invalid_argument("multiindex_expectation: need 1 <= i_k <= m");
  }
  double block = 1.0;  // m^{d-k}, the sub-block size below sorting level k
  for (std::size_t t = 0; t < d - k; ++t) block *= static_cast<double>(m);
  const double md = static_cast<double>(m);
  return -1.0 + (2.0 * static_cast<double>(i_k) * block - block + 1.0) / (md * block + 1.0);
}

// Two-sided sub-Gaussian tail bound for Beta(alpha, beta) deviations:
// min(1, 2 exp(-t^2 / (2 sigma^2))) with sigma^2 = 1 / (4 (alpha + beta + 1)).
inline double beta_subgaussian_tail(double alpha, double beta, double t) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw std::invalid_argument("beta_subgaussian_tail: parameters must be positive");
  }
  if (t < 0.0) throw std::invalid_argument("beta_subgaussian_tail: t must be nonnegative");
  const double exponent = 2.0 * t * t * (alpha + beta + 1.0);  // t^2 / (2 sigma^2)
  const double bound = 2.0 * std::exp(-exponent);
  return bound < 1.0 ? bound : 1.0;
}

struct DeviationReport {
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t m = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double threshold = 0.0;               // n^{-1/(3d)}
  std::vector<double> max_deviation;    // per trial: worst |coord - expectation|
  double pass_fraction = 0.0;           // trials with max_deviation <= threshold
};

// Samples `trials` clouds of n = m^d points (per-trial seed = seed + index),
// coordinate-sorts each, and measures the worst deviation of any sorted
// coordinate from its closed-form expectation.
inline DeviationReport deviation_experiment(std::size_t n, std::size_t d, std::size_t trials,
                                            std::uint64_t seed, std::size_t threads = 0) {
  if (trials == 0) throw std::invalid_argument("deviation_experiment: trials must be positive");
  if (d == 0 || n == 0) throw std::invalid_argument("deviation_experiment: empty configuration");
  // recover m with n = m^d
  std::size_t m = static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(n), 1.0 / static_cast<double>(d))));
  bool ok = false;
  for (std::size_t cand = (m > 1 ? m - 1 : 1); cand <= m + 1; ++cand) {
    if (detail::checked_power(cand, d) == n) {
      m = cand;
      ok = true;
      break;
    }
  }
  if (!ok) throw std::invalid_argument("deviation_experiment: n must be a perfect d-th power");

  DeviationReport rep;
  rep.n = n;
  rep.d = d;
  rep.m = m;
  rep.trials = trials;
  rep.seed = seed;
  rep.threshold = std::pow(static_cast<double>(n), -1.0 / (3.0 * static_cast<double>(d)));
  rep.max_deviation.assign(trials, 0.0);

  // Per-axis expectations only depend on the axis and the cell label.
  std::vector<std::vector<double>> expect(d);
  for (std::size_t k = 0; k < d; ++k) {
    expect[k].resize(m);
    for (std::size_t i = 1; i <= m; ++i) expect[k][i - 1] = multiindex_expectation(i, k + 1, m, d);
  }

  parallel_for_index(trials, threads, [&](std::size_t t) {
    const PointCloud cloud = sample_uniform_cube(n, d, seed + t);
    const SortedGrid grid = coordinate_sort(cloud, m);
    double worst = 0.0;
    std::vector<std::size_t> digits(d, 0);
    for (std::size_t flat = 0; flat < n; ++flat) {
      const double* x = grid.coords.data() + flat * d;
      for (std::size_t k = 0; k < d; ++k) {
        const double dev = std::fabs(x[k] - expect[k][digits[k]]);
        if (dev > worst) worst = dev;
      }
      for (std::size_t k = d; k-- > 0;) {
        if (++digits[k] < m) break;
        digits[k] = 0;
      }
    }
    rep.max_deviation[t] = worst;
  });

  std::size_t passed = 0;
  for (double v : rep.max_deviation) {
    if (v <= rep.threshold) ++passed;
  }
  rep.pass_fraction = static_cast<double>(passed) / static_cast<double>(trials);
  return rep;
}

}  // namespace rgg
