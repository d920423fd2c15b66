#pragma once

// Dense symmetric matrices, stored row-major with both triangles populated.
//
// Everything downstream (graph operators, discretized kernels, the
// eigensolver) works on this one type.  Construction sites are required to
// keep the storage exactly symmetric: set(i, j, v) writes both (i, j) and
// (j, i), so a[i*n + j] == a[j*n + i] holds bitwise.

#include <cstddef>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rgg {

struct SymmetricMatrix {
  std::size_t n = 0;
  std::vector<double> a;  // row-major, n*n entries, kept bitwise symmetric

  SymmetricMatrix() = default;

  explicit SymmetricMatrix(std::size_t order) : n(order), a(order * order, 0.0) {
    if (order == 0) throw std::invalid_argument("SymmetricMatrix: order must be positive");
  }

  // Checked accessors; hot loops should index rows via row(i) instead.
  double at(std::size_t i, std::size_t j) const {
    check(i, j);
    return a[i * n + j];
  }

  // Writes both (i, j) and (j, i) so the storage stays exactly symmetric.
  void set(std::size_t i, std::size_t j, double v) {
    check(i, j);
    a[i * n + j] = v;
    a[j * n + i] = v;
  }

  const double* row(std::size_t i) const { return a.data() + i * n; }
  double* row(std::size_t i) { return a.data() + i * n; }

  double trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n; ++i) t += a[i * n + i];
    return t;
  }

  double frobenius_norm_squared() const {
    double s = 0.0;
    for (double v : a) s += v * v;
    return s;
  }

 private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= n || j >= n) {
      throw std::out_of_range("SymmetricMatrix: index (" + std::to_string(i) + ", " +
                              std::to_string(j) + ") out of range for order " + std::to_string(n));
    }
  }
};

// Rows and columns restricted to `keep`, in the listed order.  Indices must be
// distinct and in range; an empty selection is rejected.
inline SymmetricMatrix principal_submatrix(const SymmetricMatrix& m,
                                           std::span<const std::size_t> keep) {
  if (keep.empty()) throw std::invalid_argument("principal_submatrix: empty index set");
  std::vector<bool> seen(m.n, false);
  for (std::size_t idx : keep) {
    if (idx >= m.n) throw std::out_of_range("principal_submatrix: index out of range");
    if (seen[idx]) throw std::invalid_argument("principal_submatrix: duplicate index");
    seen[idx] = true;
  }
  SymmetricMatrix sub(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j)
      sub.a[i * sub.n + j] = m.a[keep[i] * m.n + keep[j]];
  return sub;
}

}  // namespace rgg
