#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ast/geometry.hpp"

namespace ast {

/// Observed region of the disk. Either a centered disk |w| < R, handled in
/// closed form, or a closed polygon given by densely sampled boundary points.
class ObservationWindow {
 public:
  static ObservationWindow disk(double radius);
  /// Closed polygon through the given disk points (the last vertex connects
  /// back to the first).
  static ObservationWindow polygon(std::vector<Complex> boundary);
  /// Polygon in the upper half-plane; each edge is sampled so that adjacent
  /// boundary points are at most `max_step` apart in pseudo-hyperbolic
  /// distance, then mapped to the disk.
  static ObservationWindow from_halfplane_polygon(const std::vector<UpperHalfPoint>& vertices,
                                                  double max_step = 0.005);

  bool is_disk() const { return is_disk_; }
  double radius() const { return radius_; }
  const std::vector<Complex>& boundary() const { return boundary_; }

  bool contains(Complex w) const;
  /// Pseudo-hyperbolic distance from w to the boundary (to the nearest
  /// boundary sample for polygons).
  double distance_to_boundary(Complex w) const;
  /// Image under an isometry; a disk window becomes a sampled polygon.
  ObservationWindow transformed(const DiskIsometry& t, double max_step = 0.005) const;

 private:
  bool is_disk_ = false;
  double radius_ = 0.0;
  std::vector<Complex> boundary_;
};

/// 1 where the point lies in the window farther than r_guard from its
/// boundary, 0 elsewhere.
std::vector<std::uint8_t> classify_inner(const std::vector<Complex>& points,
                                         const ObservationWindow& win, double r_guard);

/// Number of points within hyperbolic distance r_prime of center, divided by
/// the area of that hyperbolic disk under the given convention.
double estimate_intensity(const std::vector<Complex>& points, Complex center, double r_prime,
                          MetricConvention convention = MetricConvention::factor4);

std::size_t count_within(const std::vector<Complex>& points, Complex center, double r_prime);

enum class PairNormalization {
  /// (1 - r^2)^2 / (2 alpha h r n_c): unbiased for zero intensity alpha/pi
  /// against dA / (1 - |w|^2)^2.
  calibrated,
  /// (1 - r^2)^2 / (4 alpha h r), no averaging over centers.
  printed,
};

const char* to_string(PairNormalization n);

struct RadialStats {
  std::vector<double> r;
  std::vector<double> g;
  std::vector<std::uint64_t> n_pairs;
  std::size_t n_centers = 0;
  double h = 0.0;
};

/// Step-kernel pair-correlation estimate: for each r, ordered pairs (z, w)
/// with z inner, w any other point and |p(z, w) - r| < h/2.
RadialStats estimate_pair_correlation(const std::vector<Complex>& points,
                                      const std::vector<std::uint8_t>& inner_mask,
                                      const std::vector<double>& r_bins, double h, double alpha,
                                      PairNormalization normalization = PairNormalization::calibrated);

/// Equally spaced bin centers r_min, r_min + step, ..., up to r_max.
std::vector<double> make_r_bins(double r_min, double r_max, double step);

}  // namespace ast
