#include "ast/spatial_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace ast {

ObservationWindow ObservationWindow::disk(double radius) {
  if (!(radius > 0.0 && radius < 1.0)) throw std::invalid_argument("window radius must be in (0, 1)");
  ObservationWindow w;
  w.is_disk_ = true;
  w.radius_ = radius;
  return w;
}

ObservationWindow ObservationWindow::polygon(std::vector<Complex> boundary) {
  if (boundary.size() < 3) throw std::invalid_argument("window polygon needs at least 3 points");
  for (const auto& b : boundary) {
    if (!(std::abs(b) < 1.0)) throw std::invalid_argument("window boundary must lie in the disk");
  }
  ObservationWindow w;
  w.boundary_ = std::move(boundary);
  return w;
}

ObservationWindow ObservationWindow::from_halfplane_polygon(
    const std::vector<UpperHalfPoint>& vertices, double max_step) {
  if (vertices.size() < 3) throw std::invalid_argument("window polygon needs at least 3 vertices");
  if (!(max_step > 0.0)) throw std::invalid_argument("max_step must be > 0");
  std::vector<Complex> pts;
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    const UpperHalfPoint a = vertices[k];
    const UpperHalfPoint b = vertices[(k + 1) % vertices.size()];
    // p(z1, z2) ~ |z1 - z2| / (2 y) for nearby points.
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    const double y_min = std::min(a.y, b.y);
    const auto steps = static_cast<std::size_t>(std::ceil(len / (2.0 * y_min * max_step)));
    const std::size_t n = std::max<std::size_t>(steps, 1);
    for (std::size_t i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(n);
      const UpperHalfPoint z{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
      pts.push_back(cayley_to_disk(z).value());
    }
  }
  return polygon(std::move(pts));
}

bool ObservationWindow::contains(Complex w) const {
  if (is_disk_) return std::abs(w) < radius_;
  bool inside = false;
  const std::size_t n = boundary_.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Complex a = boundary_[i];
    const Complex b = boundary_[j];
    if ((a.imag() > w.imag()) != (b.imag() > w.imag())) {
      const double x = a.real() + (w.imag() - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag());
      if (w.real() < x) inside = !inside;
    }
  }
  return inside;
}

double ObservationWindow::distance_to_boundary(Complex w) const {
  if (is_disk_) {
    const double a = std::abs(w);
    // The nearest boundary point lies on the ray through w.
    return std::abs(radius_ - a) / (1.0 - radius_ * a);
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& b : boundary_) best = std::min(best, pseudo_hyperbolic_distance(w, b));
  return best;
}

ObservationWindow ObservationWindow::transformed(const DiskIsometry& t, double max_step) const {
  std::vector<Complex> pts;
  if (is_disk_) {
    const double dtheta = max_step * (1.0 - radius_ * radius_) / radius_;
    const auto n = static_cast<std::size_t>(std::ceil(2.0 * std::numbers::pi / dtheta));
    for (std::size_t k = 0; k < n; ++k) {
      const double th = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
      pts.push_back(t.apply(std::polar(radius_, th)));
    }
  } else {
    for (const auto& b : boundary_) pts.push_back(t.apply(b));
  }
  return polygon(std::move(pts));
}

std::vector<std::uint8_t> classify_inner(const std::vector<Complex>& points,
                                         const ObservationWindow& win, double r_guard) {
  if (!(r_guard > 0.0 && r_guard < 1.0)) throw std::invalid_argument("r_guard must be in (0, 1)");
  std::vector<std::uint8_t> mask(points.size(), 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    mask[i] = win.contains(points[i]) && win.distance_to_boundary(points[i]) > r_guard;
  }
  return mask;
}

std::size_t count_within(const std::vector<Complex>& points, Complex center, double r_prime) {
  const double p = hyperbolic_to_pseudo(r_prime);
  std::size_t count = 0;
  for (const auto& z : points) count += pseudo_hyperbolic_distance(z, center) < p;
  return count;
}

double estimate_intensity(const std::vector<Complex>& points, Complex center, double r_prime,
                          MetricConvention convention) {
  if (!(r_prime > 0.0)) throw std::invalid_argument("intensity radius must be > 0");
  return static_cast<double>(count_within(points, center, r_prime)) /
         hyperbolic_disk_area(r_prime, convention);
}

const char* to_string(PairNormalization n) {
  return n == PairNormalization::calibrated ? "calibrated" : "printed";
}

RadialStats estimate_pair_correlation(const std::vector<Complex>& points,
                                      const std::vector<std::uint8_t>& inner_mask,
                                      const std::vector<double>& r_bins, double h, double alpha,
                                      PairNormalization normalization) {
  if (!(h > 0.0)) throw std::invalid_argument("bandwidth h must be > 0");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  if (inner_mask.size() != points.size()) throw std::invalid_argument("mask size mismatch");
  if (r_bins.empty()) throw std::invalid_argument("no r bins");
  for (std::size_t k = 0; k < r_bins.size(); ++k) {
    if (!(r_bins[k] > 0.5 * h && r_bins[k] < 1.0 - 0.5 * h)) {
      throw std::invalid_argument("r bins must lie in (h/2, 1 - h/2)");
    }
    if (k > 0 && !(r_bins[k] > r_bins[k - 1])) throw std::invalid_argument("r bins must increase");
  }
  RadialStats out;
  out.r = r_bins;
  out.h = h;
  out.n_pairs.assign(r_bins.size(), 0);
  const double reach = r_bins.back() + 0.5 * h;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!inner_mask[i]) continue;
    ++out.n_centers;
    for (std::size_t k = 0; k < points.size(); ++k) {
      if (k == i) continue;
      const double p = pseudo_hyperbolic_distance(points[k], points[i]);
      if (!(p < reach)) continue;
      auto lo = std::upper_bound(r_bins.begin(), r_bins.end(), p - 0.5 * h);
      for (auto it = lo; it != r_bins.end() && *it < p + 0.5 * h; ++it) {
        ++out.n_pairs[static_cast<std::size_t>(it - r_bins.begin())];
      }
    }
  }
  if (out.n_centers == 0) throw std::invalid_argument("no inner points for the pair correlation");
  out.g.resize(r_bins.size());
  for (std::size_t k = 0; k < r_bins.size(); ++k) {
    const double r = r_bins[k];
    const double w = (1.0 - r * r) * (1.0 - r * r);
    const double norm = normalization == PairNormalization::calibrated
                            ? w / (2.0 * alpha * h * r * static_cast<double>(out.n_centers))
                            : w / (4.0 * alpha * h * r);
    out.g[k] = norm * static_cast<double>(out.n_pairs[k]);
  }
  return out;
}

std::vector<double> make_r_bins(double r_min, double r_max, double step) {
  if (!(step > 0.0) || !(r_max >= r_min)) throw std::invalid_argument("invalid r grid");
  std::vector<double> out;
  const auto n = static_cast<std::size_t>(std::floor((r_max - r_min) / step + 1e-9));
  for (std::size_t k = 0; k <= n; ++k) out.push_back(r_min + static_cast<double>(k) * step);
  return out;
}

}  // namespace ast
