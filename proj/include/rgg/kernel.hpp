#pragma once

// Limiting integral kernels of the normalized graph operators.
//
// degree_profile(x, r) is the volume fraction of the cube covered by the
// closed r-ball around x (one axis):
//   r <= 1:  r                on |x| <= 1 - r,   (1 + r - |x|)/2 otherwise;
//   r >= 1:  1                on |x| <= r - 1,   (1 + r - |x|)/2 otherwise.
// It is even, piecewise linear, and lies in [r/2, 1]; products over axes give
// the multi-dimensional profile.  The limiting operator acts on L^2 of the
// normalized cube with kernel
//   K(x, y) = indicator(||x - y|| <= r) / sqrt(H(x) H(y)),
// bounded by prod_k (2 / r_k).  The auxiliary variant divides by H(x) only;
// it is similar to the normalized kernel via diag(sqrt(H)) and therefore
// isospectral, which is how its spectrum is obtained here (no nonsymmetric
// solver).
//
// Discretization is the midpoint Nystrom rule: nodes at the m subinterval
// midpoints of [-1, 1], matrix entries K(x_i, x_j) / m.  Products of 1-D
// eigenvalues enumerate the multi-dimensional spectrum (tensor_spectrum).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <queue>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include "rgg/eigen.hpp"
#include "rgg/geometry.hpp"
#include "rgg/matrix.hpp"

namespace rgg {

// One-axis covered-volume fraction of the closed r-ball around x in [-1, 1].
inline double degree_profile(double x, double r) {
  if (!(r > 0.0) || !(r < 2.0)) throw std::invalid_argument("degree_profile: r must lie in (0, 2)");
  const double ax = std::fabs(x);
  if (ax > 1.0) throw std::invalid_argument("degree_profile: x must lie in [-1, 1]");
  if (r <= 1.0) return (ax >= 1.0 - r) ? (1.0 + r - ax) / 2.0 : r;
  return (ax <= r - 1.0) ? 1.0 : (1.0 + r - ax) / 2.0;
}

// Product profile over axes.
inline double degree_profile(std::span<const double> x, const Radius& r) {
  if (x.empty()) throw std::invalid_argument("degree_profile: empty point");
  r.require_dim(x.size());
  double prod = 1.0;
  for (std::size_t k = 0; k < x.size(); ++k) prod *= degree_profile(x[k], r.axis(k));
  return prod;
}

enum class KernelVariant {
  normalized,  // indicator / sqrt(H(x) H(y)), symmetric
  auxiliary,   // indicator / H(x), nonsymmetric, one dimension only
};

struct KernelSpec {
  std::size_t d;
  Radius radius;
  KernelVariant variant;

  KernelSpec(std::size_t dim, Radius r, KernelVariant v = KernelVariant::normalized)
      : d(dim), radius(std::move(r)), variant(v) {
    if (d == 0) throw std::invalid_argument("KernelSpec: dimension must be positive");
    radius.require_dim(d);
    if (variant == KernelVariant::auxiliary && d != 1) {
      throw std::invalid_argument("KernelSpec: auxiliary variant is defined for d = 1 only");
    }
  }
};

// Pointwise kernel evaluation.
inline double kernel_value(const KernelSpec& spec, std::span<const double> x,
                           std::span<const double> y) {
  if (x.size() != spec.d || y.size() != spec.d) {
    throw std::invalid_argument("kernel_value: point dimension mismatch");
  }
  if (!indicator_h(x, y, spec.radius)) return 0.0;
  if (spec.variant == KernelVariant::auxiliary) return 1.0 / degree_profile(x, spec.radius);
  return 1.0 / std::sqrt(degree_profile(x, spec.radius) * degree_profile(y, spec.radius));
}

// Midpoint collocation nodes: x_i = -1 + (2i + 1)/m, each carrying weight 1/m
// of the normalized measure.  Exactly symmetric about 0 for even m.
struct NystromGrid {
  std::size_t m = 0;
  std::vector<double> nodes;

  explicit NystromGrid(std::size_t subintervals) : m(subintervals) {
    if (m == 0) throw std::invalid_argument("NystromGrid: m must be positive");
    nodes.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      nodes[i] = -1.0 + (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(m);
    }
  }

  double weight() const { return 1.0 / static_cast<double>(m); }
};

// Symmetric Nystrom matrix of a 1-D normalized kernel: entries K(x_i, x_j)/m.
// The auxiliary variant is rejected (nonsymmetric); obtain its spectrum
// through the normalized kernel, to which it is similar.
inline SymmetricMatrix nystrom_matrix(const KernelSpec& spec, const NystromGrid& grid) {
  if (spec.d != 1) throw std::invalid_argument("nystrom_matrix: only d = 1 is discretized");
  if (spec.variant != KernelVariant::normalized) {
    throw std::invalid_argument(
        "nystrom_matrix: auxiliary variant is nonsymmetric; use the normalized kernel "
        "(same spectrum by diagonal similarity)");
  }
  const std::size_t m = grid.m;
  const double r = spec.radius.axis(0);
  std::vector<double> inv_sqrt_h(m);
  for (std::size_t i = 0; i < m; ++i) inv_sqrt_h[i] = 1.0 / std::sqrt(degree_profile(grid.nodes[i], r));
  SymmetricMatrix k(m);
  const double w = grid.weight();
  for (std::size_t i = 0; i < m; ++i) {
    double* row = k.row(i);
    for (std::size_t j = i; j < m; ++j) {
      const double v = (std::fabs(grid.nodes[i] - grid.nodes[j]) <= r)
                           ? w * inv_sqrt_h[i] * inv_sqrt_h[j]
                           : 0.0;
      row[j] = v;
      k.row(j)[i] = v;
    }
  }
  return k;
}

// Top products of per-axis eigenvalue lists: the multi-dimensional spectrum is
// { prod_k lambda_{k, i_k} } over all index tuples.  Selection is by largest
// magnitude via a best-first heap over tuples; the returned values are sorted
// descending by value.  Axis lists are truncated at |lambda| <= truncation
// first, so top_k must stay within the magnitudes that survive.
inline Spectrum tensor_spectrum(std::span<const Spectrum> per_axis, std::size_t top_k,
                                double truncation = 1e-4) {
  if (per_axis.empty()) throw std::invalid_argument("tensor_spectrum: no axis spectra");
  if (top_k == 0) throw std::invalid_argument("tensor_spectrum: top_k must be positive");
  const std::size_t d = per_axis.size();

  std::vector<std::vector<double>> axes(d);
  double capacity = 1.0;
  double tol_sum = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    for (double v : per_axis[k].values) {
      if (std::fabs(v) > truncation) axes[k].push_back(v);
    }
    if (axes[k].empty()) {
      throw std::invalid_argument("tensor_spectrum: truncation removed every eigenvalue on an axis");
    }
    // Magnitude-descending order; ties broken by value so the walk is stable.
    std::sort(axes[k].begin(), axes[k].end(), [](double a, double b) {
      const double aa = std::fabs(a), ab = std::fabs(b);
      if (aa != ab) return aa > ab;
      return a > b;
    });
    capacity *= static_cast<double>(axes[k].size());
    tol_sum += per_axis[k].tol;
  }
  if (static_cast<double>(top_k) > capacity) {
    throw std::invalid_argument("tensor_spectrum: top_k exceeds the number of products");
  }

  struct Entry {
    double abs_product;
    double product;
    std::vector<std::size_t> idx;
  };
  auto worse = [](const Entry& a, const Entry& b) {
    if (a.abs_product != b.abs_product) return a.abs_product < b.abs_product;
    return a.idx > b.idx;  // deterministic tie order
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);
  std::set<std::vector<std::size_t>> visited;

  auto push = [&](std::vector<std::size_t> idx) {
    if (!visited.insert(idx).second) return;
    double prod = 1.0;
    for (std::size_t k = 0; k < d; ++k) prod *= axes[k][idx[k]];
    heap.push(Entry{std::fabs(prod), prod, std::move(idx)});
  };
  push(std::vector<std::size_t>(d, 0));

  Spectrum out;
  out.order = top_k;
  out.tol = tol_sum;
  while (out.values.size() < top_k) {
    Entry top = heap.top();
    heap.pop();
    out.values.push_back(top.product);
    for (std::size_t k = 0; k < d; ++k) {
      if (top.idx[k] + 1 < axes[k].size()) {
        std::vector<std::size_t> succ = top.idx;
        ++succ[k];
        push(std::move(succ));
      }
    }
  }
  std::sort(out.values.begin(), out.values.end(), std::greater<double>());
  return out;
}

// Isotropic convenience: the same 1-D spectrum on every one of d axes.
inline Spectrum tensor_spectrum(const Spectrum& eigs_1d, std::size_t d, std::size_t top_k,
                                double truncation = 1e-4) {
  if (d == 0) throw std::invalid_argument("tensor_spectrum: dimension must be positive");
  std::vector<Spectrum> axes(d, eigs_1d);
  return tensor_spectrum(std::span<const Spectrum>(axes), top_k, truncation);
}

// Adaptive Simpson quadrature with absolute tolerance; plenty for the smooth
// integrands used here.
namespace detail {
inline double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adaptive_simpson_rec(F&& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}
}  // namespace detail

template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol = 1e-10) {
  if (!(tol > 0.0)) throw std::invalid_argument("adaptive_simpson: tol must be positive");
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = detail::simpson(a, b, fa, fm, fb);
  return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Squared Hilbert-Schmidt norm of the unit-radius 1-D normalized kernel:
//   4 (log 2)^2 - 2 * integral_0^1 log(1 + x) / (2 - x) dx  ~= 1.33299.
inline double hs_norm_squared_k1(double tol = 1e-10) {
  const double integral = adaptive_simpson([](double x) { return std::log1p(x) / (2.0 - x); },
                                           0.0, 1.0, tol);
  const double l2 = std::log(2.0);
  return 4.0 * l2 * l2 - 2.0 * integral;
}

// Rayleigh quotient of the odd witness f(x) = x sqrt(H_r(x)) against the 1-D
// normalized kernel, evaluated by midpoint quadrature with m nodes per axis.
// For every r in (0, 1) the quotient exceeds 1/2, which pins the second
// eigenvalue above 1/2 in the subcritical regime.
inline double rayleigh_lower_bound_r_lt_1(double r, std::size_t m = 4000) {
  if (!(r > 0.0) || !(r < 1.0)) {
    throw std::invalid_argument("rayleigh_lower_bound_r_lt_1: r must lie in (0, 1)");
  }
  if (m < 2) throw std::invalid_argument("rayleigh_lower_bound_r_lt_1: m must be at least 2");
  NystromGrid grid(m);
  const std::vector<double>& x = grid.nodes;
  // <K f, f> = double integral of x y 1_{|x-y|<=r} over nu x nu: the sqrt(H)
  // factors of f cancel against the kernel denominator.
  double num = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (std::fabs(x[i] - x[j]) <= r) row += x[j];
    }
    num += x[i] * row;
  }
  num /= static_cast<double>(m) * static_cast<double>(m);
  // <f, f> = integral of x^2 H_r(x) over nu.
  double den = 0.0;
  for (std::size_t i = 0; i < m; ++i) den += x[i] * x[i] * degree_profile(x[i], r);
  den /= static_cast<double>(m);
  return num / den;
}

// Max-node residual ||K f - lambda f||_inf of a candidate eigenpair, with the
// kernel applied through the midpoint rule on the given grid (d = 1).
inline double eigenfunction_residual(const KernelSpec& spec, const std::function<double(double)>& f,
                                     double lambda, const NystromGrid& grid) {
  if (spec.d != 1) throw std::invalid_argument("eigenfunction_residual: only d = 1 is supported");
  if (!f) throw std::invalid_argument("eigenfunction_residual: empty function");
  const std::size_t m = grid.m;
  const double r = spec.radius.axis(0);
  std::vector<double> fv(m), h(m);
  for (std::size_t i = 0; i < m; ++i) {
    fv[i] = f(grid.nodes[i]);
    h[i] = degree_profile(grid.nodes[i], r);
  }
  double worst = 0.0;
  const double w = grid.weight();
  for (std::size_t i = 0; i < m; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (std::fabs(grid.nodes[i] - grid.nodes[j]) > r) continue;
      const double k = (spec.variant == KernelVariant::auxiliary)
                           ? 1.0 / h[i]
                           : 1.0 / std::sqrt(h[i] * h[j]);
      acc += k * fv[j];
    }
    const double res = std::fabs(w * acc - lambda * fv[i]);
    if (res > worst) worst = res;
  }
  return worst;
}

}  // namespace rgg
