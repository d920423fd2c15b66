// Cyclic Jacobi eigenvalue iteration, used only by the test suite as an
// independent oracle for the production tridiagonalize-then-QL solver.
// It is deliberately simple (O(n^3) per sweep, dense rotations through the
// checked accessors) so that its correctness is evident from the classic
// rotation formulas alone.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "rgg/matrix.hpp"

namespace rgg_test {

// Eigenvalues of a symmetric matrix, sorted descending.
inline std::vector<double> jacobi_eigenvalues(rgg::SymmetricMatrix a, int max_sweeps = 64) {
  const std::size_t n = a.n;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += a.at(p, q) * a.at(p, q);
    }
    if (off == 0.0) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a.at(p, q);
        if (apq == 0.0) continue;
        const double app = a.at(p, p);
        const double aqq = a.at(q, q);
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(tau * tau + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a.at(k, p);
          const double akq = a.at(k, q);
          a.set(k, p, c * akp - s * akq);
          a.set(k, q, s * akp + c * akq);
        }
        a.set(p, p, app - t * apq);
        a.set(q, q, aqq + t * apq);
        a.set(p, q, 0.0);
      }
    }
  }
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a.at(i, i);
  std::sort(values.begin(), values.end(), [](double x, double y) { return x > y; });
  return values;
}

}  // namespace rgg_test
