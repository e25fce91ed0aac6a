#include "ast/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ast {

namespace {
constexpr Complex kI{0.0, 1.0};
constexpr double kBoundaryTolerance = 1e-12;
}  // namespace

DiskPoint::DiskPoint(Complex w) : w_(w) {
  if (!(std::abs(w) < 1.0)) {
    throw std::domain_error("DiskPoint: |w| must be < 1");
  }
}

const char* to_string(MetricConvention c) {
  return c == MetricConvention::unit ? "unit" : "factor4";
}

MetricConvention parse_metric_convention(const char* name) {
  const std::string_view s(name);
  if (s == "unit") return MetricConvention::unit;
  if (s == "factor4") return MetricConvention::factor4;
  throw std::invalid_argument("unknown metric convention '" + std::string(s) +
                              "' (expected unit|factor4)");
}

DiskPoint cayley_to_disk(UpperHalfPoint z) {
  if (!(z.y > 0.0)) {
    throw std::domain_error("cayley_to_disk: point not in the upper half-plane");
  }
  const Complex zc(z.x, z.y);
  return DiskPoint((zc - kI) / (zc + kI));
}

UpperHalfPoint cayley_from_disk(DiskPoint w) {
  const Complex wv = w.value();
  if (1.0 - std::abs(wv) < kBoundaryTolerance) {
    throw std::domain_error("cayley_from_disk: point too close to the unit circle");
  }
  const Complex z = (kI + kI * wv) / (1.0 - wv);
  return {z.real(), z.imag()};
}

double pseudo_hyperbolic_distance(DiskPoint a, DiskPoint b) {
  return pseudo_hyperbolic_distance(a.value(), b.value());
}

double hyperbolic_distance(DiskPoint a, DiskPoint b) {
  return pseudo_to_hyperbolic(pseudo_hyperbolic_distance(a, b));
}

double pseudo_to_hyperbolic(double p) { return 2.0 * std::atanh(p); }

double hyperbolic_to_pseudo(double r_prime) { return std::tanh(0.5 * r_prime); }

double hyperbolic_disk_area(double r_prime, MetricConvention convention) {
  if (r_prime < 0.0) {
    throw std::domain_error("hyperbolic_disk_area: negative radius");
  }
  const double s = std::sinh(0.5 * r_prime);
  const double scale = convention == MetricConvention::factor4 ? 4.0 : 1.0;
  return scale * std::numbers::pi * s * s;
}

DiskIsometry DiskIsometry::moving_origin_to(DiskPoint target, double angle) {
  // a = e^{i angle/2} / sqrt(1 - |c|^2), b = c conj(a), so T(0) = c.
  const Complex c = target.value();
  const Complex a = std::polar(1.0 / std::sqrt(1.0 - std::norm(c)), 0.5 * angle);
  return DiskIsometry{a, c * std::conj(a)};
}

}  // namespace ast
