#pragma once

// Coordinate-sorted grids and step-kernel convergence metrics.
//
// A cloud of n = m^d points is reordered so that cell (i_1, ..., i_d) of the
// regular m-grid on [-1, 1]^d holds exactly one point: first sort everything
// by coordinate 1 and cut into m blocks, then sort each block by
// coordinate 2, and so on.  The reordered W-matrix ("step kernel") is the
// original W conjugated by a permutation, so its spectrum is unchanged —
// but viewed as a step function on the cell grid it converges to the
// limiting kernel, which the metrics below quantify:
//   sup_h_distance   exact sup-distance between the empirical degree step
//                    function and the limit profile,
//   l1_kernel_distance   quadrature L1 distance between step kernel and
//                    limit kernel,
//   goodset_classification   cell pairs certainly inside / certainly outside
//                    the radius vs the undecided boundary band.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rgg/geometry.hpp"
#include "rgg/graph.hpp"
#include "rgg/kernel.hpp"
#include "rgg/matrix.hpp"

namespace rgg {

// Points rearranged into cell order.  Flat index is the lexicographic rank of
// the multi-index (axis 1 slowest), multi-indices are 1-based like cell
// labels.
struct SortedGrid {
  std::size_t d = 0;
  std::size_t m = 0;
  std::size_t n = 0;                      // m^d
  std::vector<double> coords;             // row-major, point per flat cell index
  std::vector<std::size_t> source_index;  // flat cell index -> index in the original cloud

  std::span<const double> point(std::size_t flat) const {
    if (flat >= n) throw std::out_of_range("SortedGrid: cell index out of range");
    return {coords.data() + flat * d, d};
  }

  std::size_t flatten(std::span<const std::size_t> idx1) const {
    if (idx1.size() != d) throw std::invalid_argument("SortedGrid: multi-index dimension mismatch");
    std::size_t flat = 0;
    for (std::size_t k = 0; k < d; ++k) {
      if (idx1[k] < 1 || idx1[k] > m) throw std::out_of_range("SortedGrid: multi-index out of range");
      flat = flat * m + (idx1[k] - 1);
    }
    return flat;
  }
};

namespace detail {

// m^d with overflow guard; throws if it cannot be represented.
inline std::size_t checked_power(std::size_t m, std::size_t d) {
  std::size_t p = 1;
  for (std::size_t k = 0; k < d; ++k) {
    if (m != 0 && p > static_cast<std::size_t>(-1) / m) {
      throw std::invalid_argument("grid size m^d overflows");
    }
    p *= m;
  }
  return p;
}

}  // namespace detail

// Recursive block sort: ties are broken by original point index, so the
// assignment is deterministic even with duplicate coordinates.
inline SortedGrid coordinate_sort(const PointCloud& cloud, std::size_t m) {
  if (m == 0) throw std::invalid_argument("coordinate_sort: m must be positive");
  if (cloud.d == 0 || cloud.n == 0) throw std::invalid_argument("coordinate_sort: empty cloud");
  if (detail::checked_power(m, cloud.d) != cloud.n) {
    throw std::invalid_argument("coordinate_sort: cloud size " + std::to_string(cloud.n) +
                                " is not m^d = " + std::to_string(m) + "^" +
                                std::to_string(cloud.d));
  }
  const std::size_t d = cloud.d;
  std::vector<std::size_t> idx(cloud.n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});

  // Block [lo, lo + m^{d-k}) is sorted by coordinate k, then cut into m
  // sub-blocks handled at the next level.
  std::size_t block = cloud.n;
  for (std::size_t k = 0; k < d; ++k) {
    const std::size_t sub = block / m;
    for (std::size_t lo = 0; lo < cloud.n; lo += block) {
      std::sort(idx.begin() + lo, idx.begin() + lo + block,
                [&cloud, d, k](std::size_t a, std::size_t b) {
                  const double ca = cloud.coords[a * d + k];
                  const double cb = cloud.coords[b * d + k];
                  if (ca != cb) return ca < cb;
                  return a < b;
                });
    }
    block = sub;
  }

  SortedGrid grid;
  grid.d = d;
  grid.m = m;
  grid.n = cloud.n;
  grid.source_index = std::move(idx);
  grid.coords.resize(cloud.n * d);
  for (std::size_t c = 0; c < cloud.n; ++c) {
    const double* src = cloud.coords.data() + grid.source_index[c] * d;
    std::copy(src, src + d, grid.coords.data() + c * d);
  }
  return grid;
}

// 1-based cell label of a point on the regular m-grid; the last cell is
// closed so that +1 belongs to cell m.
inline std::vector<std::size_t> cell_of(std::span<const double> x, std::size_t m) {
  if (m == 0) throw std::invalid_argument("cell_of: m must be positive");
  if (x.empty()) throw std::invalid_argument("cell_of: empty point");
  std::vector<std::size_t> cell(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] >= -1.0) || !(x[k] <= 1.0)) {
      throw std::invalid_argument("cell_of: coordinate outside [-1, 1]");
    }
    const double t = (x[k] + 1.0) / 2.0 * static_cast<double>(m);
    std::size_t i = static_cast<std::size_t>(t) + 1;
    if (i > m) i = m;
    cell[k] = i;
  }
  return cell;
}

// The reordered cloud's W-matrix.  Conjugation by the sorting permutation
// leaves the spectrum exactly equal to the unsorted cloud's.
struct StepKernel {
  std::size_t d = 0;
  std::size_t m = 0;
  std::size_t n = 0;
  Radius radius;
  SymmetricMatrix matrix_form;
};

inline StepKernel step_w_matrix(const SortedGrid& grid, const Radius& r) {
  if (grid.n == 0) throw std::invalid_argument("step_w_matrix: empty grid");
  r.require_dim(grid.d);
  PointCloud reordered;
  reordered.n = grid.n;
  reordered.d = grid.d;
  reordered.seed = 0;
  reordered.coords = grid.coords;
  GraphOperators ops = build_graph_operators(reordered, r);
  return StepKernel{grid.d, grid.m, grid.n, r, std::move(ops.w_matrix)};
}

namespace detail {

// Normalized degrees of the sorted points (empirical profile values).
inline std::vector<double> empirical_profile(const SortedGrid& grid, const Radius& r) {
  const std::size_t n = grid.n, d = grid.d;
  std::vector<double> prof(n, 0.0);
  std::vector<std::size_t> deg(n, 1);  // self-neighbor
  for (std::size_t i = 0; i < n; ++i) {
    const double* xi = grid.coords.data() + i * d;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double* xj = grid.coords.data() + j * d;
      bool within = true;
      for (std::size_t k = 0; k < d; ++k) {
        if (std::fabs(xi[k] - xj[k]) > r.axis(k)) {
          within = false;
          break;
        }
      }
      if (within) {
        ++deg[i];
        ++deg[j];
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) prof[i] = static_cast<double>(deg[i]) / static_cast<double>(n);
  return prof;
}

// Exact min and max of the one-axis profile over cell i (1-based).  The
// profile is even and decreasing in |x|, so extremes sit at the endpoints —
// plus the interior point 0 when the cell straddles it (odd m).
inline void profile_range_on_cell(std::size_t i, std::size_t m, double r, double& lo, double& hi) {
  const double a = -1.0 + 2.0 * static_cast<double>(i - 1) / static_cast<double>(m);
  const double b = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(m);
  double vlo = degree_profile(a, r), vhi = degree_profile(b, r);
  if (vlo > vhi) std::swap(vlo, vhi);
  if (a < 0.0 && b > 0.0) {
    const double v0 = degree_profile(0.0, r);
    if (v0 > vhi) vhi = v0;
  }
  lo = vlo;
  hi = vhi;
}

}  // namespace detail

// Exact sup-distance over the cube between the cellwise-constant empirical
// degree profile and the limit profile.
inline double sup_h_distance(const SortedGrid& grid, const Radius& r) {
  if (grid.n == 0) throw std::invalid_argument("sup_h_distance: empty grid");
  r.require_dim(grid.d);
  const std::vector<double> prof = detail::empirical_profile(grid, r);
  const std::size_t d = grid.d, m = grid.m;
  double sup = 0.0;
  std::vector<std::size_t> digits(d, 0);  // 0-based cell digits, axis 0 slowest
  for (std::size_t flat = 0; flat < grid.n; ++flat) {
    double lo = 1.0, hi = 1.0;
    for (std::size_t k = 0; k < d; ++k) {
      double alo, ahi;
      detail::profile_range_on_cell(digits[k] + 1, m, r.axis(k), alo, ahi);
      lo *= alo;
      hi *= ahi;
    }
    const double c = prof[flat];
    sup = std::max({sup, std::fabs(c - lo), std::fabs(c - hi)});
    for (std::size_t k = d; k-- > 0;) {  // increment the mixed-radix counter
      if (++digits[k] < m) break;
      digits[k] = 0;
    }
  }
  return sup;
}

// Quadrature L1 distance between the step kernel n * w(cell(x), cell(y)) and
// the limit kernel, with sub midpoint nodes per axis per cell.
inline double l1_kernel_distance(const SortedGrid& grid, const Radius& r, std::size_t sub = 2) {
  if (grid.n == 0) throw std::invalid_argument("l1_kernel_distance: empty grid");
  if (sub == 0) throw std::invalid_argument("l1_kernel_distance: sub must be positive");
  r.require_dim(grid.d);
  const std::size_t n = grid.n, d = grid.d, m = grid.m;

  std::vector<double> prof = detail::empirical_profile(grid, r);
  std::vector<double> inv_sqrt_deg(n);
  for (std::size_t i = 0; i < n; ++i) {
    inv_sqrt_deg[i] = 1.0 / std::sqrt(prof[i] * static_cast<double>(n));
  }

  // Quadrature nodes per cell: sub^d points, each with 1/sqrt(H) cached.
  const std::size_t q = detail::checked_power(sub, d);
  std::vector<double> qcoords(n * q * d);
  std::vector<double> qinv(n * q);
  {
    std::vector<std::size_t> digits(d, 0);
    std::vector<std::size_t> qdig(d, 0);
    for (std::size_t flat = 0; flat < n; ++flat) {
      for (std::size_t t = 0; t < q; ++t) {
        double hprod = 1.0;
        for (std::size_t k = 0; k < d; ++k) {
          const double a = -1.0 + 2.0 * static_cast<double>(digits[k]) / static_cast<double>(m);
          const double width = 2.0 / static_cast<double>(m);
          const double x = a + width * (static_cast<double>(qdig[k]) + 0.5) / static_cast<double>(sub);
          qcoords[(flat * q + t) * d + k] = x;
          hprod *= degree_profile(x, r.axis(k));
        }
        qinv[flat * q + t] = 1.0 / std::sqrt(hprod);
        for (std::size_t k = d; k-- > 0;) {
          if (++qdig[k] < sub) break;
          qdig[k] = 0;
        }
      }
      for (std::size_t k = d; k-- > 0;) {
        if (++digits[k] < m) break;
        digits[k] = 0;
      }
    }
  }

  const double nd = static_cast<double>(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* xi = grid.coords.data() + i * d;
    for (std::size_t j = i; j < n; ++j) {
      const double* xj = grid.coords.data() + j * d;
      bool within = true;
      for (std::size_t k = 0; k < d; ++k) {
        if (std::fabs(xi[k] - xj[k]) > r.axis(k)) {
          within = false;
          break;
        }
      }
      const double step = within ? nd * inv_sqrt_deg[i] * inv_sqrt_deg[j] : 0.0;  // n * w_ij
      double acc = 0.0;
      for (std::size_t p = 0; p < q; ++p) {
        const double* xp = qcoords.data() + (i * q + p) * d;
        for (std::size_t s = 0; s < q; ++s) {
          const double* xs = qcoords.data() + (j * q + s) * d;
          bool lim_within = true;
          for (std::size_t k = 0; k < d; ++k) {
            if (std::fabs(xp[k] - xs[k]) > r.axis(k)) {
              lim_within = false;
              break;
            }
          }
          const double lim = lim_within ? qinv[i * q + p] * qinv[j * q + s] : 0.0;
          acc += std::fabs(step - lim);
        }
      }
      const double pair_mean = acc / static_cast<double>(q * q);
      total += (i == j ? 1.0 : 2.0) * pair_mean;
    }
  }
  return total / (nd * nd);
}

// Cell-pair partition at radius r with margin eps: pairs whose cells are
// entirely within distance r - eps ("inside"), entirely beyond r + eps
// ("outside"), and the undecided boundary band.  Violations count inside
// pairs that are not edges and outside pairs that are (there should be none:
// the classification is a geometric certainty).
struct GoodsetReport {
  std::size_t n = 0;
  double r = 0.0;
  double eps = 0.0;
  std::size_t inside = 0;    // ordered cell pairs, diagonal included
  std::size_t outside = 0;
  std::size_t boundary = 0;
  double boundary_fraction = 0.0;
  std::size_t violations = 0;
};

inline GoodsetReport goodset_classification(const SortedGrid& grid, double r, double eps) {
  if (grid.n == 0) throw std::invalid_argument("goodset_classification: empty grid");
  if (!(r > 0.0) || !(r < 2.0)) throw std::invalid_argument("goodset_classification: r must lie in (0, 2)");
  if (!(eps > 0.0) || !(eps < r) || !(eps < 2.0 - r)) {
    throw std::invalid_argument("goodset_classification: eps must lie in (0, min(r, 2 - r))");
  }
  const std::size_t n = grid.n, d = grid.d, m = grid.m;

  // Per-axis distance range between two cells depends only on the label
  // offset: cells i and j (width 2/m) satisfy
  //   min |x - y| = 2 max(0, delta - 1) / m,   max |x - y| = 2 (delta + 1) / m
  // with delta = |i - j|, and the sup-norm box ranges are axis maxima of both.
  std::vector<double> dmin(m), dmax(m);
  for (std::size_t delta = 0; delta < m; ++delta) {
    dmin[delta] = delta == 0 ? 0.0 : 2.0 * static_cast<double>(delta - 1) / static_cast<double>(m);
    dmax[delta] = 2.0 * static_cast<double>(delta + 1) / static_cast<double>(m);
  }

  GoodsetReport rep;
  rep.n = n;
  rep.r = r;
  rep.eps = eps;

  std::vector<std::size_t> di(d), dj(d);
  for (std::size_t i = 0; i < n; ++i) {
    // decode digits of i (axis 0 slowest)
    {
      std::size_t rest = i;
      for (std::size_t k = d; k-- > 0;) {
        di[k] = rest % m;
        rest /= m;
      }
    }
    const double* xi = grid.coords.data() + i * d;
    for (std::size_t j = i; j < n; ++j) {
      {
        std::size_t rest = j;
        for (std::size_t k = d; k-- > 0;) {
          dj[k] = rest % m;
          rest /= m;
        }
      }
      double mind = 0.0, maxd = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const std::size_t delta = di[k] > dj[k] ? di[k] - dj[k] : dj[k] - di[k];
        mind = std::max(mind, dmin[delta]);
        maxd = std::max(maxd, dmax[delta]);
      }
      const std::size_t mult = (i == j) ? 1 : 2;  // ordered pairs
      if (maxd < r - eps) {
        rep.inside += mult;
        const double* xj = grid.coords.data() + j * d;
        if (linf_distance({xi, d}, {xj, d}) > r) rep.violations += mult;
      } else if (mind > r + eps) {
        rep.outside += mult;
        const double* xj = grid.coords.data() + j * d;
        if (linf_distance({xi, d}, {xj, d}) <= r) rep.violations += mult;
      } else {
        rep.boundary += mult;
      }
    }
  }
  rep.boundary_fraction =
      static_cast<double>(rep.boundary) / (static_cast<double>(n) * static_cast<double>(n));
  return rep;
}

}  // namespace rgg
