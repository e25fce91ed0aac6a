#pragma once

#include <complex>

namespace ast {

using Complex = std::complex<double>;

/// A point x + iy of the upper half-plane. For time-frequency use, x is time
/// in seconds and y = 1/xi is the scale in seconds.
struct UpperHalfPoint {
  double x = 0.0;
  double y = 1.0;
};

/// A point of the open unit disk. Construction rejects |w| >= 1.
class DiskPoint {
 public:
  DiskPoint() = default;
  explicit DiskPoint(Complex w);
  DiskPoint(double re, double im) : DiskPoint(Complex(re, im)) {}

  Complex value() const { return w_; }
  double real() const { return w_.real(); }
  double imag() const { return w_.imag(); }
  double abs() const { return std::abs(w_); }

 private:
  Complex w_{0.0, 0.0};
};

/// Normalization of the hyperbolic area measure on the disk.
///
/// `unit` pairs the zero intensity alpha/pi with the measure
/// dA / (1 - |z|^2)^2, so a disk of hyperbolic radius r' has area
/// pi sinh^2(r'/2). `factor4` uses the metric 4 dA / (1 - |z|^2)^2, area
/// 4 pi sinh^2(r'/2) and intensity alpha/(4 pi). Both pairings give the
/// same expected counts.
enum class MetricConvention { unit, factor4 };

const char* to_string(MetricConvention c);
MetricConvention parse_metric_convention(const char* name);

/// Cayley map (z - i)/(z + i) from the upper half-plane onto the disk.
DiskPoint cayley_to_disk(UpperHalfPoint z);

/// Inverse Cayley map (i + i w)/(1 - w). Rejects points within 1e-12 of the
/// unit circle.
UpperHalfPoint cayley_from_disk(DiskPoint w);

/// |a - b| / |1 - conj(b) a|
double pseudo_hyperbolic_distance(DiskPoint a, DiskPoint b);

/// Unchecked variant for inner loops; both arguments must lie in the disk.
inline double pseudo_hyperbolic_distance(Complex a, Complex b) {
  return std::abs(a - b) / std::abs(1.0 - std::conj(b) * a);
}

/// 2 atanh(p(a, b))
double hyperbolic_distance(DiskPoint a, DiskPoint b);

double pseudo_to_hyperbolic(double p);
double hyperbolic_to_pseudo(double r_prime);

/// Area of a hyperbolic disk of radius r_prime. The default convention
/// returns 4 pi sinh^2(r_prime / 2).
double hyperbolic_disk_area(double r_prime,
                            MetricConvention convention = MetricConvention::factor4);

/// Orientation-preserving isometry z -> (a z + b)/(conj(b) z + conj(a)) with
/// |a|^2 - |b|^2 = 1.
struct DiskIsometry {
  Complex a{1.0, 0.0};
  Complex b{0.0, 0.0};

  /// Isometry rotating by `angle` and then moving the origin to `target`.
  static DiskIsometry moving_origin_to(DiskPoint target, double angle = 0.0);

  Complex apply(Complex z) const { return (a * z + b) / (std::conj(b) * z + std::conj(a)); }
  DiskPoint operator()(DiskPoint z) const { return DiskPoint(apply(z.value())); }
};

}  // namespace ast
