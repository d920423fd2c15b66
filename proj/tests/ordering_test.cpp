#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "rgg/eigen.hpp"
#include "rgg/graph.hpp"
#include "rgg/ordering.hpp"

using rgg::PointCloud;
using rgg::Radius;
using rgg::SortedGrid;

namespace {

PointCloud cloud_from(std::vector<double> coords, std::size_t d) {
  PointCloud c;
  c.d = d;
  c.n = coords.size() / d;
  c.coords = std::move(coords);
  return c;
}

// one point per cell midpoint of the regular m-grid on [-1, 1]
PointCloud midpoint_cloud_1d(std::size_t m) {
  std::vector<double> coords(m);
  for (std::size_t i = 0; i < m; ++i) {
    coords[i] = -1.0 + (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(m);
  }
  return cloud_from(std::move(coords), 1);
}

}  // namespace

TEST_CASE("coordinate sort assigns the 2x2 reference cloud to its cells") {
  // cell contents: (1,1) <- (-0.5,-0.5), (1,2) <- (-0.4,0.5),
  //                (2,1) <- (0.5,-0.5), (2,2) <- (0.4,0.5)
  // presented in scrambled order to exercise source_index
  const PointCloud c = cloud_from({0.5, -0.5,    // p0 -> cell (2,1)
                                   -0.5, -0.5,   // p1 -> cell (1,1)
                                   0.4, 0.5,     // p2 -> cell (2,2)
                                   -0.4, 0.5},   // p3 -> cell (1,2)
                                  2);
  const SortedGrid g = rgg::coordinate_sort(c, 2);
  REQUIRE(g.n == 4);
  REQUIRE(g.source_index == std::vector<std::size_t>{1, 3, 0, 2});

  const std::vector<std::size_t> c11 = {1, 1}, c12 = {1, 2}, c21 = {2, 1}, c22 = {2, 2};
  REQUIRE(g.point(g.flatten(c11))[0] == -0.5);
  REQUIRE(g.point(g.flatten(c11))[1] == -0.5);
  REQUIRE(g.point(g.flatten(c12))[0] == -0.4);
  REQUIRE(g.point(g.flatten(c21))[0] == 0.5);
  REQUIRE(g.point(g.flatten(c22))[0] == 0.4);
}

TEST_CASE("coordinate sort breaks coordinate ties by original index") {
  const PointCloud c = cloud_from({0.5, 0.5, -0.5, -0.5}, 1);
  const SortedGrid g = rgg::coordinate_sort(c, 4);
  REQUIRE(g.source_index == std::vector<std::size_t>{2, 3, 0, 1});
}

TEST_CASE("coordinate sort validates the grid size") {
  REQUIRE_THROWS_AS(rgg::coordinate_sort(cloud_from({0.0, 0.0, 0.0}, 1), 2),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(rgg::coordinate_sort(cloud_from({0.0, 0.0}, 2), 2), std::invalid_argument);
  REQUIRE_THROWS_AS(rgg::coordinate_sort(cloud_from({0.0}, 1), 0), std::invalid_argument);
}

TEST_CASE("cell labels follow the half-open grid with a closed last cell") {
  const std::vector<double> left = {-1.0}, right = {1.0}, origin = {0.0, 0.0};
  REQUIRE(rgg::cell_of(left, 4) == std::vector<std::size_t>{1});
  REQUIRE(rgg::cell_of(right, 4) == std::vector<std::size_t>{4});
  REQUIRE(rgg::cell_of(origin, 2) == std::vector<std::size_t>{2, 2});
  const std::vector<double> x = {0.5};
  REQUIRE(rgg::cell_of(x, 4) == std::vector<std::size_t>{4});  // 0.5 opens cell 4
  const std::vector<double> y = {-0.25};
  REQUIRE(rgg::cell_of(y, 4) == std::vector<std::size_t>{2});
  const std::vector<double> bad = {1.5};
  REQUIRE_THROWS_AS(rgg::cell_of(bad, 4), std::invalid_argument);
}

TEST_CASE("flatten maps 1-based multi-indices lexicographically") {
  SortedGrid g;
  g.d = 2;
  g.m = 3;
  g.n = 9;
  const std::vector<std::size_t> a = {1, 1}, b = {2, 3}, top = {3, 3};
  REQUIRE(g.flatten(a) == 0);
  REQUIRE(g.flatten(b) == 5);
  REQUIRE(g.flatten(top) == 8);
  const std::vector<std::size_t> oob = {0, 1}, wrong = {1};
  REQUIRE_THROWS_AS(g.flatten(oob), std::out_of_range);
  REQUIRE_THROWS_AS(g.flatten(wrong), std::invalid_argument);
}

TEST_CASE("step kernel is the permutation-conjugated W with an identical spectrum") {
  const PointCloud cloud = rgg::sample_uniform_cube(81, 2, 33);
  const Radius r(1.0);
  const rgg::GraphOperators ops = rgg::build_graph_operators(cloud, r);
  const SortedGrid grid = rgg::coordinate_sort(cloud, 9);
  const rgg::StepKernel step = rgg::step_w_matrix(grid, r);

  // entrywise: step(a, b) == W(source(a), source(b)), bitwise
  for (std::size_t a = 0; a < grid.n; ++a) {
    for (std::size_t b = 0; b < grid.n; ++b) {
      REQUIRE(step.matrix_form.at(a, b) ==
              ops.w_matrix.at(grid.source_index[a], grid.source_index[b]));
    }
  }

  const rgg::Spectrum s1 = rgg::symmetric_eigenvalues(ops.w_matrix);
  const rgg::Spectrum s2 = rgg::symmetric_eigenvalues(step.matrix_form);
  for (std::size_t i = 0; i < s1.values.size(); ++i) {
    REQUIRE(s1.values[i] == Catch::Approx(s2.values[i]).margin(1e-11));
  }
}

TEST_CASE("sup-distance of the two-point grid is exactly one half") {
  // sorted points -0.5, 0.5 at r = 1 both get degree 2, so the empirical
  // profile is constant 1; the limit profile dips to 1/2 at the cube edge.
  const PointCloud c = cloud_from({0.5, -0.5}, 1);
  const SortedGrid g = rgg::coordinate_sort(c, 2);
  REQUIRE(rgg::sup_h_distance(g, Radius(1.0)) == Catch::Approx(0.5).margin(1e-15));
}

TEST_CASE("sup-distance sees the interior maximum when a cell straddles zero") {
  // m = 1: the single cell is [-1, 1], whose profile maximum H(0) = 1 sits in
  // the interior, not at the endpoints H(+-1) = 1/2.
  const PointCloud c = cloud_from({1.0}, 1);
  const SortedGrid g = rgg::coordinate_sort(c, 1);
  // the lone point has degree 1, profile 1; the cell range is [1/2, 1], so
  // the sup-distance is 1 - 1/2 taken at the edges
  REQUIRE(rgg::sup_h_distance(g, Radius(1.0)) == Catch::Approx(0.5).margin(1e-15));
}

TEST_CASE("l1 distance of the two-point grid matches the hand value") {
  const PointCloud c = cloud_from({0.5, -0.5}, 1);
  const SortedGrid g = rgg::coordinate_sort(c, 2);
  // with one midpoint node per cell every quadrature term is |1 - 4/3| = 1/3
  REQUIRE(rgg::l1_kernel_distance(g, Radius(1.0), 1) == Catch::Approx(1.0 / 3.0).margin(1e-14));
  REQUIRE(rgg::l1_kernel_distance(g, Radius(1.0), 2) > 0.0);
  REQUIRE_THROWS_AS(rgg::l1_kernel_distance(g, Radius(1.0), 0), std::invalid_argument);
}

TEST_CASE("convergence metrics shrink on a finer midpoint grid") {
  // midpoint clouds are the idealized sorted configuration, so both metrics
  // must decrease as m grows
  const Radius r(1.0);
  const SortedGrid coarse = rgg::coordinate_sort(midpoint_cloud_1d(8), 8);
  const SortedGrid fine = rgg::coordinate_sort(midpoint_cloud_1d(64), 64);
  REQUIRE(rgg::sup_h_distance(fine, r) < rgg::sup_h_distance(coarse, r));
  REQUIRE(rgg::l1_kernel_distance(fine, r) < rgg::l1_kernel_distance(coarse, r));
}

TEST_CASE("goodset partition of the 4-cell midpoint grid at unit radius") {
  const SortedGrid g = rgg::coordinate_sort(midpoint_cloud_1d(4), 4);
  const rgg::GoodsetReport rep = rgg::goodset_classification(g, 1.0, 0.1);
  REQUIRE(rep.inside == 4);      // only the diagonal cells are certainly inside
  REQUIRE(rep.outside == 0);
  REQUIRE(rep.boundary == 12);
  REQUIRE(rep.boundary_fraction == Catch::Approx(0.75));
  REQUIRE(rep.violations == 0);
}

TEST_CASE("goodset margin must leave room on both sides of the radius") {
  const SortedGrid g = rgg::coordinate_sort(midpoint_cloud_1d(4), 4);
  REQUIRE_THROWS_AS(rgg::goodset_classification(g, 1.0, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(rgg::goodset_classification(g, 0.3, 0.4), std::invalid_argument);
  REQUIRE_THROWS_AS(rgg::goodset_classification(g, 1.9, 0.2), std::invalid_argument);
}

TEST_CASE("goodset classification is certain on a well-concentrated random cloud") {
  // at this size the sorted points sit close enough to their cells that the
  // ±eps margin absorbs every fluctuation
  const std::size_t n = 4096;
  const PointCloud cloud = rgg::sample_uniform_cube(n, 1, 321);
  const SortedGrid g = rgg::coordinate_sort(cloud, n);
  const rgg::GoodsetReport rep = rgg::goodset_classification(g, 1.0, 0.1);
  REQUIRE(rep.violations == 0);
  REQUIRE(rep.inside + rep.outside + rep.boundary == n * n);
  // counting bound: boundary pairs live in a band of width 2 eps around the
  // radius, plus two cells of slack per side
  REQUIRE(rep.boundary_fraction <= 2.0 * 1.0 * (2.0 - 1.0) * 0.1 + 0.01);
}
