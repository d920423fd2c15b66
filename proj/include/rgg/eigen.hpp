#pragma once

// Full symmetric eigensolver, eigenvalues only.
//
// Two classic stages: Householder reduction to tridiagonal form, then the
// implicit-shift QL iteration on the tridiagonal.  Both stages are
// deterministic (no randomized pivoting, fixed sweep order), so a fixed input
// matrix always yields the same output to the last bit.  Accuracy is at the
// level of a few units of n * machine-epsilon relative to the spectral
// radius, far below the default contract tolerance of 1e-10.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rgg/matrix.hpp"

namespace rgg {

// Result of an eigenvalue computation: values sorted descending, the
// a-posteriori accuracy estimate actually achieved (relative to ||M||_2), and
// the matrix order.
struct Spectrum {
  std::vector<double> values;
  double tol = 0.0;
  std::size_t order = 0;
};

// Thrown when the QL iteration fails to isolate an eigenvalue within the
// iteration cap.  Carries the offending iteration count.
struct eigensolver_failure : std::runtime_error {
  int iterations;
  explicit eigensolver_failure(int iters)
      : std::runtime_error("symmetric_eigenvalues: QL iteration failed to converge after " +
                           std::to_string(iters) + " iterations"),
        iterations(iters) {}
};

namespace detail {

// Householder reduction of a symmetric matrix to tridiagonal form, values
// only.  `a` is row-major n*n with both triangles populated and is destroyed.
// On return d[0..n-1] holds the diagonal and e[1..n-1] the subdiagonal
// (e[0] = 0).  Keeping both triangles current makes every inner loop a
// contiguous row traversal.
inline void householder_tridiagonalize(std::vector<double>& a, std::size_t n,
                                       std::vector<double>& d, std::vector<double>& e) {
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  std::vector<double> p(n, 0.0);
  for (std::size_t i = n - 1; i >= 1; --i) {
    const std::size_t l = i - 1;
    double* ai = a.data() + i * n;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (std::size_t k = 0; k <= l; ++k) scale += std::fabs(ai[k]);
      if (scale == 0.0) {
        e[i] = ai[l];  // row already reduced
      } else {
        for (std::size_t k = 0; k <= l; ++k) {
          ai[k] /= scale;
          h += ai[k] * ai[k];
        }
        double f = ai[l];
        double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;  // h = |u|^2 / 2 with u the Householder vector below
        ai[l] = f - g;
        // p = A u / h over the leading block; rows are contiguous.
        for (std::size_t j = 0; j <= l; ++j) {
          const double* aj = a.data() + j * n;
          double s = 0.0;
          for (std::size_t k = 0; k <= l; ++k) s += aj[k] * ai[k];
          p[j] = s / h;
        }
        double up = 0.0;
        for (std::size_t j = 0; j <= l; ++j) up += ai[j] * p[j];
        const double kappa = up / (2.0 * h);
        for (std::size_t j = 0; j <= l; ++j) p[j] -= kappa * ai[j];  // q = p - K u
        // Rank-2 update A <- A - u q^T - q u^T on both triangles.
        for (std::size_t j = 0; j <= l; ++j) {
          const double uj = ai[j];
          const double qj = p[j];
          double* aj = a.data() + j * n;
          for (std::size_t k = 0; k <= l; ++k) aj[k] -= uj * p[k] + qj * ai[k];
        }
      }
    } else {
      e[i] = ai[l];
    }
  }
  for (std::size_t i = 0; i < n; ++i) d[i] = a[i * n + i];
}

// Implicit-shift QL on a tridiagonal matrix (diagonal d, subdiagonal e with
// e[l] coupling d[l] and d[l+1]).  Deflation at machine epsilon; at most
// `iter_cap` shifts are spent per eigenvalue.
inline void ql_implicit_shifts(std::vector<double>& d, std::vector<double>& e, std::size_t n,
                               int iter_cap) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (n == 0) return;
  // Renumber the subdiagonal so e[l] sits between d[l] and d[l+1].
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  // Overall scale for the absolute deflation test.  A purely relative test
  // cannot terminate blocks that are rounding noise of a much larger matrix
  // (e.g. the tridiagonal of a rank-one operator), so couplings negligible
  // against this norm are dropped too — consistent with accuracy being
  // quoted relative to the spectral radius.
  double anorm = 0.0;
  for (std::size_t i = 0; i < n; ++i) anorm = std::max(anorm, std::fabs(d[i]) + std::fabs(e[i]));
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= eps * dd || std::fabs(e[m]) <= eps * anorm) break;
      }
      if (m != l) {
        if (iter++ == iter_cap) throw eigensolver_failure(iter_cap);
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, pshift = 0.0;
        std::ptrdiff_t i;
        for (i = static_cast<std::ptrdiff_t>(m) - 1; i >= static_cast<std::ptrdiff_t>(l); --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {  // underflow recovery: split and re-scan
            d[i + 1] -= pshift;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - pshift;
          r = (d[i] - g) * s + 2.0 * c * b;
          pshift = s * r;
          d[i + 1] = g + pshift;
          g = c * r - b;
        }
        if (r == 0.0 && i >= static_cast<std::ptrdiff_t>(l)) continue;
        d[l] -= pshift;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace detail

// Eigenvalues of a symmetric matrix, sorted descending.  `tol` is the accuracy
// the caller requires relative to ||M||_2; the solver always runs at machine
// precision and records the (smaller) achieved estimate in Spectrum::tol, so
// any tol above that estimate is honored.
inline Spectrum symmetric_eigenvalues(const SymmetricMatrix& m, double tol = 1e-10) {
  if (m.n == 0) throw std::invalid_argument("symmetric_eigenvalues: empty matrix");
  if (!(tol > 0.0)) throw std::invalid_argument("symmetric_eigenvalues: tol must be positive");
  const std::size_t n = m.n;
  Spectrum out;
  out.order = n;
  if (n == 1) {
    out.values = {m.a[0]};
    out.tol = std::numeric_limits<double>::epsilon();
    return out;
  }
  std::vector<double> work = m.a;
  std::vector<double> d, e;
  detail::householder_tridiagonalize(work, n, d, e);
  detail::ql_implicit_shifts(d, e, n, /*iter_cap=*/50);
  std::sort(d.begin(), d.end(), std::greater<double>());
  out.values = std::move(d);
  out.tol = static_cast<double>(n) * std::numeric_limits<double>::epsilon();
  return out;
}

// (v^T M v) / (v^T v); the vector must match the matrix order and have a
// positive norm.
inline double rayleigh_quotient(const SymmetricMatrix& m, std::span<const double> v) {
  if (v.size() != m.n) throw std::invalid_argument("rayleigh_quotient: vector length mismatch");
  double vmv = 0.0, vv = 0.0;
  for (std::size_t i = 0; i < m.n; ++i) {
    const double* row = m.row(i);
    double mv = 0.0;
    for (std::size_t j = 0; j < m.n; ++j) mv += row[j] * v[j];
    vmv += v[i] * mv;
    vv += v[i] * v[i];
  }
  if (vv == 0.0) throw std::invalid_argument("rayleigh_quotient: zero vector");
  return vmv / vv;
}

}  // namespace rgg
