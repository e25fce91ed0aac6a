#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ast/geometry.hpp"

namespace ast {

/// Truncated hyperbolic GAF sum_n zeta_n sqrt(Gamma(alpha + n) / n!) w^n.
///
/// Coefficient n is normals[n] * exp(log_std[n]). Keeping the log standard
/// deviations separate lets large alpha and long truncations stay finite.
struct GafSample {
  double alpha = 1.0;
  std::uint64_t seed = 0;
  std::vector<Complex> normals;
  std::vector<double> log_std;

  std::size_t truncation() const { return normals.size(); }
  /// max_n log_std[n]; the global factor divided out of coefficients().
  double log_scale() const;
  /// Coefficients scaled by exp(-log_scale()); finite in doubles.
  std::vector<Complex> coefficients() const;
};

/// Smallest truncation whose omitted tail variance at |w| = r_max is below
/// rel_tolerance^2 times the full variance (1 - r_max^2)^{-alpha}.
std::size_t truncation_for(double alpha, double r_max, double rel_tolerance = 1e-8);

/// i.i.d. standard complex normals (E|zeta|^2 = 1), deterministic in seed.
GafSample sample_gaf(double alpha, std::size_t truncation, std::uint64_t seed);

/// Sample with the given coefficients taken literally (log_std = 0).
GafSample gaf_from_coefficients(const std::vector<Complex>& coeffs, double alpha = 1.0);

/// Roots with |w| <= r_max, sorted by (real, imag). Throws ConvergenceError if
/// a retained root fails the residual check.
std::vector<Complex> gaf_zeros(const GafSample& g, double r_max);

/// alpha/pi for the unit convention, alpha/(4 pi) for factor4.
double theoretical_intensity(double alpha, MetricConvention convention);

/// Pair correlation of the zeros at pseudo-hyperbolic distance r in (0, 1).
double theoretical_pair_correlation(double alpha, double r);

/// alpha r^2 / (1 - r^2): expected zero count in the disk |w| < r.
double expected_zero_count_disk(double alpha, double r);

}  // namespace ast
