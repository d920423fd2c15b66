#pragma once

// Spectral-measure experiments on graph operators.
//
// The limiting placement of W-eigenvalues: the top eigenvalue is exactly 1;
// in dimension d at unit radius, eigenvalue 2^{-k} appears with multiplicity
// at least C(d, k), and outside (-0.3, 0.3) nothing else survives in the
// limit.  multiplicity_profile counts eigenvalues in the windows
// (2^{-k} - delta, 2^{-k} + delta); gap_sweep tracks the spectral gap
// gamma_2 = 1 - lambda_2 across radii; interlacing_check verifies the Cauchy
// interlacing inequalities for principal submatrices; bridge_general_n checks
// the threshold-count sandwich between nested sub-clouds of sizes
// (m-1)^d <= n <= m^d.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "rgg/eigen.hpp"
#include "rgg/geometry.hpp"
#include "rgg/graph.hpp"
#include "rgg/ordering.hpp"
#include "rgg/parallel.hpp"

namespace rgg {

// Number of eigenvalues strictly inside the open interval (lo, hi).
inline std::size_t measure_count(const Spectrum& spec, double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("measure_count: need lo < hi");
  std::size_t count = 0;
  for (double v : spec.values) {
    if (v > lo && v < hi) ++count;
  }
  return count;
}

struct MultiplicityProfile {
  std::size_t d = 0;
  double delta = 0.0;
  std::vector<std::size_t> counts;  // counts[k] = eigenvalues in (2^{-k} - delta, 2^{-k} + delta)
  std::size_t outside = 0;          // |lambda| > 0.3 + delta and in none of the windows
};

// Window counts from an already computed spectrum.
inline MultiplicityProfile multiplicity_profile(const Spectrum& spec, std::size_t d,
                                                double delta = 0.05) {
  if (d == 0) throw std::invalid_argument("multiplicity_profile: d must be positive");
  if (!(delta > 0.0)) throw std::invalid_argument("multiplicity_profile: delta must be positive");
  for (std::size_t k = 0; k < d; ++k) {
    const double upper_next = std::ldexp(1.0, -static_cast<int>(k + 1)) + delta;
    const double lower_this = std::ldexp(1.0, -static_cast<int>(k)) - delta;
    if (!(upper_next < lower_this)) {
      throw std::invalid_argument("multiplicity_profile: delta makes the windows overlap");
    }
  }
  MultiplicityProfile prof;
  prof.d = d;
  prof.delta = delta;
  prof.counts.assign(d + 1, 0);
  for (double v : spec.values) {
    bool counted = false;
    for (std::size_t k = 0; k <= d; ++k) {
      const double center = std::ldexp(1.0, -static_cast<int>(k));
      if (v > center - delta && v < center + delta) {
        ++prof.counts[k];
        counted = true;
        break;
      }
    }
    if (!counted && std::fabs(v) > 0.3 + delta) ++prof.outside;
  }
  return prof;
}

// Convenience form matching the experiment configuration: build the unit
// radius W-operator of the cloud and count.  The placement claim is specific
// to r = 1, so other radii are rejected.
inline MultiplicityProfile multiplicity_profile(const PointCloud& cloud, double r = 1.0,
                                                double delta = 0.05) {
  if (r != 1.0) {
    throw std::invalid_argument("multiplicity_profile: the window counts are defined at r = 1");
  }
  const GraphOperators ops = build_graph_operators(cloud, Radius(1.0));
  const Spectrum spec = symmetric_eigenvalues(ops.w_matrix);
  return multiplicity_profile(spec, cloud.d, delta);
}

struct GapReport {
  double r = 0.0;
  std::size_t d = 0;
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<double> gamma2;  // per trial, 1 - lambda_2
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

// Spectral gap gamma_2 = 1 - lambda_2 across radii; per-trial clouds are
// sampled with seed + trial-index (the same clouds for every radius, which
// couples the sweep).
inline std::vector<GapReport> gap_sweep(std::size_t d, std::size_t n,
                                        std::span<const double> r_values, std::size_t trials,
                                        std::uint64_t seed, std::size_t threads = 0) {
  if (r_values.empty()) throw std::invalid_argument("gap_sweep: no radii");
  if (trials == 0) throw std::invalid_argument("gap_sweep: trials must be positive");
  std::vector<Radius> radii;
  radii.reserve(r_values.size());
  for (double r : r_values) radii.emplace_back(r);  // validates each radius

  std::vector<GapReport> reports(r_values.size());
  for (std::size_t ri = 0; ri < r_values.size(); ++ri) {
    GapReport& rep = reports[ri];
    rep.r = r_values[ri];
    rep.d = d;
    rep.n = n;
    rep.trials = trials;
    rep.seed = seed;
    rep.gamma2.assign(trials, 0.0);
    parallel_for_index(trials, threads, [&](std::size_t t) {
      const PointCloud cloud = sample_uniform_cube(n, d, seed + t);
      const GraphOperators ops = build_graph_operators(cloud, radii[ri]);
      const Spectrum spec = symmetric_eigenvalues(ops.w_matrix);
      rep.gamma2[t] = 1.0 - spec.values[1];
    });
    rep.mean = 0.0;
    rep.min = std::numeric_limits<double>::infinity();
    rep.max = -std::numeric_limits<double>::infinity();
    for (double g : rep.gamma2) {
      rep.mean += g;
      rep.min = std::min(rep.min, g);
      rep.max = std::max(rep.max, g);
    }
    rep.mean /= static_cast<double>(trials);
  }
  return reports;
}

struct InterlacingReport {
  bool ok = false;
  double worst_violation = 0.0;  // max overshoot of either inequality, floored at 0
};

// Cauchy interlacing for a principal submatrix: with parent eigenvalues
// a_1 >= ... >= a_n and child eigenvalues b_1 >= ... >= b_m (m <= n),
//   a_{k + n - m} <= b_k <= a_k  for every k.
inline InterlacingReport interlacing_check(const Spectrum& parent, const Spectrum& child,
                                           double tol = 1e-9) {
  const std::size_t n = parent.values.size();
  const std::size_t m = child.values.size();
  if (m == 0 || m > n) {
    throw std::invalid_argument("interlacing_check: child order must be in [1, parent order]");
  }
  if (!(tol >= 0.0)) throw std::invalid_argument("interlacing_check: tol must be nonnegative");
  double worst = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    worst = std::max(worst, child.values[k] - parent.values[k]);
    worst = std::max(worst, parent.values[k + n - m] - child.values[k]);
  }
  worst = std::max(worst, 0.0);
  return InterlacingReport{worst <= tol, worst};
}

struct BridgeReport {
  bool degenerate = false;  // d = 1: every n is already a grid size
  std::size_t m = 0;
  std::vector<std::size_t> sizes;             // (m-1)^d, n, m^d
  std::vector<double> thresholds;
  std::vector<std::vector<std::size_t>> counts;  // counts[size][threshold]: #{ |lambda| > thr }
  bool sandwich_ok = false;
};

// Threshold-count sandwich across nested sub-clouds: the first (m-1)^d,
// first n, and all m^d points of one cloud.  For each threshold the count of
// eigenvalues with |lambda| > thr must be monotone in the sub-cloud size.
inline BridgeReport bridge_general_n(const PointCloud& cloud, std::size_t n_mid, double r,
                                     std::span<const double> thresholds) {
  if (thresholds.empty()) throw std::invalid_argument("bridge_general_n: no thresholds");
  if (cloud.n == 0 || cloud.d == 0) throw std::invalid_argument("bridge_general_n: empty cloud");
  BridgeReport rep;
  rep.thresholds.assign(thresholds.begin(), thresholds.end());
  if (cloud.d == 1) {
    rep.degenerate = true;  // nothing to bridge: every n equals m^1
    rep.sandwich_ok = true;
    return rep;
  }
  // recover m with cloud.n = m^d
  std::size_t m = static_cast<std::size_t>(std::llround(
      std::pow(static_cast<double>(cloud.n), 1.0 / static_cast<double>(cloud.d))));
  bool ok = false;
  for (std::size_t cand = (m > 1 ? m - 1 : 1); cand <= m + 1; ++cand) {
    if (detail::checked_power(cand, cloud.d) == cloud.n) {
      m = cand;
      ok = true;
      break;
    }
  }
  if (!ok) throw std::invalid_argument("bridge_general_n: cloud size must be a perfect d-th power");
  if (m < 2) throw std::invalid_argument("bridge_general_n: need m >= 2");
  const std::size_t lo = detail::checked_power(m - 1, cloud.d);
  if (!(lo < n_mid && n_mid < cloud.n)) {
    throw std::invalid_argument("bridge_general_n: need (m-1)^d < n < m^d");
  }
  rep.m = m;
  rep.sizes = {lo, n_mid, cloud.n};

  const Radius radius(r);
  for (std::size_t size : rep.sizes) {
    PointCloud prefix;
    prefix.n = size;
    prefix.d = cloud.d;
    prefix.seed = cloud.seed;
    prefix.coords.assign(cloud.coords.begin(),
                         cloud.coords.begin() + static_cast<std::ptrdiff_t>(size * cloud.d));
    const GraphOperators ops = build_graph_operators(prefix, radius);
    const Spectrum spec = symmetric_eigenvalues(ops.w_matrix);
    std::vector<std::size_t> row(rep.thresholds.size(), 0);
    for (std::size_t ti = 0; ti < rep.thresholds.size(); ++ti) {
      for (double v : spec.values) {
        if (std::fabs(v) > rep.thresholds[ti]) ++row[ti];
      }
    }
    rep.counts.push_back(std::move(row));
  }
  rep.sandwich_ok = true;
  for (std::size_t ti = 0; ti < rep.thresholds.size(); ++ti) {
    if (!(rep.counts[0][ti] <= rep.counts[1][ti] && rep.counts[1][ti] <= rep.counts[2][ti])) {
      rep.sandwich_ok = false;
    }
  }
  return rep;
}

}  // namespace rgg
