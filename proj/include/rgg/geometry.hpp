#pragma once

// Point clouds on the cube [-1, 1]^d under the sup-norm.
//
// Sampling is fully deterministic for a fixed (n, d, seed): coordinates come
// from a splitmix64 stream mapped to [0, 1) with an explicit bit-shift, so
// clouds are reproducible bit-for-bit across platforms and per-trial streams
// can be derived as seed + trial-index.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rgg {

// Counter-based 64-bit generator (splitmix64).  State advances by a fixed
// odd constant, so distinct seeds give independent-looking streams.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1), 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform double in [-1, 1).
  double next_symmetric() { return 2.0 * next_unit() - 1.0; }
};

struct PointCloud {
  std::size_t n = 0;           // number of points
  std::size_t d = 0;           // dimension
  std::uint64_t seed = 0;      // generator seed (0 for hand-assembled clouds)
  std::vector<double> coords;  // row-major, coords[i*d + k] = k-th coordinate of point i

  std::span<const double> point(std::size_t i) const {
    if (i >= n) throw std::out_of_range("PointCloud: point index out of range");
    return {coords.data() + i * d, d};
  }
};

// Closed neighborhood radii for the sup-norm indicator: either one shared
// radius for every axis or one radius per axis.  Every radius must lie in
// (0, 2); at 2 the cube is always covered and the model degenerates.
class Radius {
 public:
  explicit Radius(double r) : r_({r}), iso_(true) { validate(); }

  explicit Radius(std::vector<double> per_axis) : r_(std::move(per_axis)), iso_(false) {
    if (r_.empty()) throw std::invalid_argument("Radius: empty per-axis list");
    if (r_.size() == 1) iso_ = true;
    validate();
  }

  bool isotropic() const { return iso_; }

  // Radius along axis k (0-based); isotropic radii apply to every axis.
  double axis(std::size_t k) const {
    if (iso_) return r_[0];
    if (k >= r_.size()) throw std::out_of_range("Radius: axis out of range");
    return r_[k];
  }

  // Number of pinned axes; 0 means "any dimension" (isotropic).
  std::size_t axes() const { return iso_ ? 0 : r_.size(); }

  void require_dim(std::size_t d) const {
    if (!iso_ && r_.size() != d) {
      throw std::invalid_argument("Radius: got " + std::to_string(r_.size()) +
                                  " per-axis radii for dimension " + std::to_string(d));
    }
  }

 private:
  void validate() const {
    for (double r : r_) {
      if (!(r > 0.0) || !(r < 2.0) || !std::isfinite(r)) {
        throw std::invalid_argument("Radius: every radius must lie in (0, 2)");
      }
    }
  }

  std::vector<double> r_;
  bool iso_;
};

// n i.i.d. uniform points on [-1, 1]^d, reproducible for a fixed seed.
inline PointCloud sample_uniform_cube(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sample_uniform_cube: n must be positive");
  if (d == 0) throw std::invalid_argument("sample_uniform_cube: d must be positive");
  PointCloud cloud;
  cloud.n = n;
  cloud.d = d;
  cloud.seed = seed;
  cloud.coords.resize(n * d);
  SplitMix64 gen(seed);
  for (double& c : cloud.coords) c = gen.next_symmetric();
  return cloud;
}

// Sup-norm distance max_k |x_k - y_k|; dimensions must agree.
inline double linf_distance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) {
    throw std::invalid_argument("linf_distance: dimension mismatch");
  }
  double dist = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double dk = std::fabs(x[k] - y[k]);
    if (dk > dist) dist = dk;
  }
  return dist;
}

// Neighborhood indicator: 1 iff |x_k - y_k| <= r_k on every axis.  With an
// isotropic radius this is the sup-norm ball test ||x - y|| <= r.
inline bool indicator_h(std::span<const double> x, std::span<const double> y, const Radius& r) {
  if (x.size() != y.size() || x.empty()) {
    throw std::invalid_argument("indicator_h: dimension mismatch");
  }
  r.require_dim(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (std::fabs(x[k] - y[k]) > r.axis(k)) return false;
  }
  return true;
}

}  // namespace rgg
