#pragma once

// Random geometric graph operators.
//
// For a point cloud X_1..X_n and radius r the adjacency matrix is
// A[i][j] = 1 iff ||X_i - X_j|| <= r in the sup-norm.  The diagonal is part
// of the convention: every vertex neighbors itself, so degrees are
// d_i = sum_j A[i][j] >= 1 and the normalized operator
// W = D^{-1/2} A D^{-1/2} is well defined with spectrum in [-1, 1], top
// eigenvalue exactly 1 with eigenvector (sqrt(d_1), ..., sqrt(d_n)), and
// normalized Laplacian L = I - W.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rgg/geometry.hpp"
#include "rgg/matrix.hpp"

namespace rgg {

struct GraphOperators {
  SymmetricMatrix adjacency;          // entries in {0, 1}, unit diagonal
  std::vector<std::int64_t> degrees;  // row sums of the adjacency, all >= 1
  SymmetricMatrix w_matrix;           // D^{-1/2} A D^{-1/2}
  SymmetricMatrix laplacian;          // I - w_matrix
};

inline GraphOperators build_graph_operators(const PointCloud& cloud, const Radius& r) {
  if (cloud.n == 0 || cloud.d == 0) {
    throw std::invalid_argument("build_graph_operators: empty cloud");
  }
  r.require_dim(cloud.d);
  const std::size_t n = cloud.n;
  const std::size_t d = cloud.d;

  GraphOperators ops{SymmetricMatrix(n), std::vector<std::int64_t>(n, 0), SymmetricMatrix(n),
                     SymmetricMatrix(n)};

  const double* coords = cloud.coords.data();
  for (std::size_t i = 0; i < n; ++i) {
    double* arow = ops.adjacency.row(i);
    arow[i] = 1.0;  // self-neighbor by convention
    const double* xi = coords + i * d;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double* xj = coords + j * d;
      bool within = true;
      for (std::size_t k = 0; k < d; ++k) {
        if (std::fabs(xi[k] - xj[k]) > r.axis(k)) {
          within = false;
          break;
        }
      }
      const double v = within ? 1.0 : 0.0;
      arow[j] = v;
      ops.adjacency.row(j)[i] = v;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t deg = 0;
    const double* arow = ops.adjacency.row(i);
    for (std::size_t j = 0; j < n; ++j) deg += (arow[j] != 0.0) ? 1 : 0;
    ops.degrees[i] = deg;  // >= 1 thanks to the diagonal
  }

  std::vector<double> inv_sqrt_deg(n);
  for (std::size_t i = 0; i < n; ++i) inv_sqrt_deg[i] = 1.0 / std::sqrt(static_cast<double>(ops.degrees[i]));

  for (std::size_t i = 0; i < n; ++i) {
    const double* arow = ops.adjacency.row(i);
    double* wrow = ops.w_matrix.row(i);
    double* lrow = ops.laplacian.row(i);
    const double si = inv_sqrt_deg[i];
    for (std::size_t j = 0; j < n; ++j) {
      const double w = (arow[j] != 0.0) ? si * inv_sqrt_deg[j] : 0.0;
      wrow[j] = w;
      lrow[j] = (i == j ? 1.0 : 0.0) - w;
    }
  }
  return ops;
}

}  // namespace rgg
