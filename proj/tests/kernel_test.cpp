#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "rgg/eigen.hpp"
#include "rgg/kernel.hpp"

using rgg::KernelSpec;
using rgg::KernelVariant;
using rgg::NystromGrid;
using rgg::Radius;
using rgg::Spectrum;

TEST_CASE("one-axis degree profile matches its closed form") {
  // r <= 1 branch
  REQUIRE(rgg::degree_profile(0.0, 0.5) == 0.5);
  REQUIRE(rgg::degree_profile(0.4, 0.5) == 0.5);           // interior plateau
  REQUIRE(rgg::degree_profile(1.0, 0.5) == 0.25);          // edge: (1 + r - 1)/2 = r/2
  REQUIRE(rgg::degree_profile(-0.8, 0.5) == Catch::Approx((1.0 + 0.5 - 0.8) / 2.0));
  // r >= 1 branch
  REQUIRE(rgg::degree_profile(0.2, 1.5) == 1.0);           // saturated plateau
  REQUIRE(rgg::degree_profile(0.9, 1.5) == Catch::Approx(0.8));
  REQUIRE(rgg::degree_profile(1.0, 1.5) == Catch::Approx(0.75));
  // r = 1: both branches coincide, H(x) = (2 - |x|)/2
  REQUIRE(rgg::degree_profile(0.0, 1.0) == 1.0);
  REQUIRE(rgg::degree_profile(0.6, 1.0) == Catch::Approx(0.7));
}

TEST_CASE("degree profile is even, continuous at the kink, and in [r/2, 1]") {
  for (double r : {0.3, 0.7, 1.0, 1.3, 1.9}) {
    for (int i = 0; i <= 200; ++i) {
      const double x = -1.0 + 2.0 * i / 200.0;
      const double h = rgg::degree_profile(x, r);
      REQUIRE(h == rgg::degree_profile(-x, r));
      REQUIRE(h >= r / 2.0 - 1e-15);
      REQUIRE(h <= 1.0 + 1e-15);
    }
    const double kink = (r <= 1.0) ? 1.0 - r : r - 1.0;
    REQUIRE(rgg::degree_profile(kink - 1e-9, r) ==
            Catch::Approx(rgg::degree_profile(kink + 1e-9, r)).margin(1e-8));
  }
  REQUIRE_THROWS_AS(rgg::degree_profile(1.5, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(rgg::degree_profile(0.0, 2.0), std::invalid_argument);
  REQUIRE_THROWS_AS(rgg::degree_profile(0.0, 0.0), std::invalid_argument);
}

TEST_CASE("multi-axis degree profile is the product over axes") {
  const std::vector<double> corner = {1.0, 1.0};
  REQUIRE(rgg::degree_profile(corner, Radius(1.0)) == Catch::Approx(0.25));
  const std::vector<double> mid = {0.5, -0.5};
  REQUIRE(rgg::degree_profile(mid, Radius(1.0)) == Catch::Approx(0.5625));
  const std::vector<double> aniso_pt = {0.0, 1.0};
  REQUIRE(rgg::degree_profile(aniso_pt, Radius(std::vector<double>{0.5, 1.5})) ==
          Catch::Approx(0.5 * 0.75));
}

TEST_CASE("kernel values: indicator over sqrt of profile product") {
  const KernelSpec spec(1, Radius(1.0));
  const std::vector<double> zero = {0.0}, one = {1.0}, minus = {-1.0};
  REQUIRE(rgg::kernel_value(spec, zero, zero) == 1.0);
  REQUIRE(rgg::kernel_value(spec, one, one) == Catch::Approx(2.0));  // 1/sqrt(0.5 * 0.5)
  REQUIRE(rgg::kernel_value(spec, minus, one) == 0.0);               // distance 2 > r

  // uniform bound prod (2 / r_k)
  const KernelSpec spec2(2, Radius(std::vector<double>{0.5, 1.5}));
  const double bound = (2.0 / 0.5) * (2.0 / 1.5);
  rgg::SplitMix64 rng(123);
  for (int t = 0; t < 500; ++t) {
    const std::vector<double> x = {rng.next_symmetric(), rng.next_symmetric()};
    const std::vector<double> y = {rng.next_symmetric(), rng.next_symmetric()};
    REQUIRE(rgg::kernel_value(spec2, x, y) <= bound + 1e-12);
  }

  const KernelSpec aux(1, Radius(1.0), KernelVariant::auxiliary);
  REQUIRE(rgg::kernel_value(aux, one, zero) == Catch::Approx(2.0));  // 1/H(1)
  REQUIRE(rgg::kernel_value(aux, zero, one) == Catch::Approx(1.0));  // 1/H(0): nonsymmetric
  REQUIRE_THROWS_AS(KernelSpec(2, Radius(1.0), KernelVariant::auxiliary), std::invalid_argument);
}

TEST_CASE("nystrom grid places midpoints and rejects misuse") {
  const NystromGrid g(4);
  REQUIRE(g.nodes == std::vector<double>{-0.75, -0.25, 0.25, 0.75});
  REQUIRE(g.weight() == 0.25);
  REQUIRE_THROWS_AS(NystromGrid(0), std::invalid_argument);
  REQUIRE_THROWS_AS(
      rgg::nystrom_matrix(KernelSpec(1, Radius(1.0), KernelVariant::auxiliary), g),
      std::invalid_argument);
}

TEST_CASE("unit-radius kernel spectrum at m = 500 hits the frozen reference values") {
  const NystromGrid grid(500);
  const rgg::SymmetricMatrix k = rgg::nystrom_matrix(KernelSpec(1, Radius(1.0)), grid);
  const Spectrum s = rgg::symmetric_eigenvalues(k);
  REQUIRE(s.values[0] == Catch::Approx(1.001333).margin(1e-6));
  REQUIRE(s.values[1] == Catch::Approx(0.499200).margin(1e-6));
  REQUIRE(s.values[2] == Catch::Approx(0.102335).margin(1e-6));
  REQUIRE(s.values.back() == Catch::Approx(-0.146024).margin(1e-6));
  double tail = 0.0;
  for (std::size_t i = 2; i < s.values.size(); ++i) tail += s.values[i] * s.values[i];
  REQUIRE(tail == Catch::Approx(0.082909).margin(1e-6));
}

TEST_CASE("auxiliary kernel is diagonally similar to the normalized one") {
  // B = indicator / (m H(x_i)) conjugated by diag(sqrt(H)) must reproduce the
  // normalized Nystrom matrix entrywise, which is why both share a spectrum.
  const std::size_t m = 1000;
  const double r = 1.0;
  const NystromGrid grid(m);
  const rgg::SymmetricMatrix normalized = rgg::nystrom_matrix(KernelSpec(1, Radius(r)), grid);
  std::vector<double> h(m);
  for (std::size_t i = 0; i < m; ++i) h[i] = rgg::degree_profile(grid.nodes[i], r);
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double b = (std::fabs(grid.nodes[i] - grid.nodes[j]) <= r)
                           ? 1.0 / (static_cast<double>(m) * h[i])
                           : 0.0;
      const double conj = std::sqrt(h[i]) * b / std::sqrt(h[j]);
      worst = std::max(worst, std::fabs(conj - normalized.at(i, j)));
    }
  }
  REQUIRE(worst <= 1e-12);
}

TEST_CASE("tensor products agree with exhaustive enumeration") {
  Spectrum a, b;
  a.values = {1.0, 0.5, -0.3, 0.2};
  b.values = {0.9, -0.6, 0.1};
  a.order = 4;
  b.order = 3;
  std::vector<Spectrum> axes = {a, b};

  std::vector<double> all;
  for (double va : a.values)
    for (double vb : b.values) all.push_back(va * vb);
  std::sort(all.begin(), all.end(), [](double x, double y) {
    const double ax = std::fabs(x), ay = std::fabs(y);
    if (ax != ay) return ax > ay;
    return x > y;
  });

  for (std::size_t top_k : {1u, 4u, 7u, 12u}) {
    const Spectrum got = rgg::tensor_spectrum(std::span<const Spectrum>(axes), top_k, 1e-9);
    std::vector<double> expect(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(top_k));
    std::sort(expect.begin(), expect.end(), std::greater<double>());
    REQUIRE(got.values.size() == top_k);
    for (std::size_t i = 0; i < top_k; ++i) {
      REQUIRE(got.values[i] == Catch::Approx(expect[i]).margin(1e-14));
    }
  }
  REQUIRE_THROWS_AS(rgg::tensor_spectrum(std::span<const Spectrum>(axes), 13, 1e-9),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(rgg::tensor_spectrum(std::span<const Spectrum>(axes), 1, 2.0),
                    std::invalid_argument);
}

TEST_CASE("isotropic tensor overload reproduces eigenvalue powers") {
  Spectrum s;
  s.values = {1.0, 0.5};
  s.order = 2;
  const Spectrum t = rgg::tensor_spectrum(s, 3, 4, 1e-9);
  // products over {1, 0.5}^3 by magnitude: 1, 0.5 (x3), 0.25 (x3), 0.125
  REQUIRE(t.values[0] == Catch::Approx(1.0));
  REQUIRE(t.values[1] == Catch::Approx(0.5));
  REQUIRE(t.values[2] == Catch::Approx(0.5));
  REQUIRE(t.values[3] == Catch::Approx(0.5));
}

TEST_CASE("adaptive quadrature integrates analytic cases") {
  REQUIRE(rgg::adaptive_simpson([](double x) { return x * x; }, 0.0, 1.0) ==
          Catch::Approx(1.0 / 3.0).margin(1e-12));
  const double pi = std::acos(-1.0);
  REQUIRE(rgg::adaptive_simpson([](double x) { return std::sin(x); }, 0.0, pi) ==
          Catch::Approx(2.0).margin(1e-10));
  REQUIRE_THROWS_AS(rgg::adaptive_simpson([](double x) { return x; }, 0.0, 1.0, 0.0),
                    std::invalid_argument);
}

TEST_CASE("squared Hilbert-Schmidt norm of the unit-radius kernel") {
  REQUIRE(rgg::hs_norm_squared_k1() == Catch::Approx(1.3329293478358404).margin(1e-12));
}

TEST_CASE("odd witness keeps the subcritical Rayleigh quotient above 1/2") {
  const double q5 = rgg::rayleigh_lower_bound_r_lt_1(0.5);
  REQUIRE(q5 == Catch::Approx(0.861892).margin(1e-4));
  double prev = 1.0;
  for (double r : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double q = rgg::rayleigh_lower_bound_r_lt_1(r, 2000);
    REQUIRE(q > 0.5);
    REQUIRE(q < prev);
    prev = q;
  }
  REQUIRE_THROWS_AS(rgg::rayleigh_lower_bound_r_lt_1(1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(rgg::rayleigh_lower_bound_r_lt_1(0.5, 1), std::invalid_argument);
}

TEST_CASE("known eigenpairs of the unit-radius kernel have small residuals") {
  const KernelSpec spec(1, Radius(1.0));
  const NystromGrid grid(2000);
  const auto sqrt_h = [](double x) { return std::sqrt(rgg::degree_profile(x, 1.0)); };
  const auto odd = [&](double x) { return x * sqrt_h(x); };
  REQUIRE(rgg::eigenfunction_residual(spec, sqrt_h, 1.0, grid) <= 5e-3);
  REQUIRE(rgg::eigenfunction_residual(spec, odd, 0.5, grid) <= 5e-3);
  // a wrong eigenvalue must show a visibly larger residual
  REQUIRE(rgg::eigenfunction_residual(spec, sqrt_h, 0.8, grid) > 0.1);
}
