#include "ast/gaf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "ast/polynomial.hpp"

namespace ast {

double GafSample::log_scale() const {
  if (log_std.empty()) return 0.0;
  return *std::max_element(log_std.begin(), log_std.end());
}

std::vector<Complex> GafSample::coefficients() const {
  const double shift = log_scale();
  std::vector<Complex> out(normals.size());
  for (std::size_t n = 0; n < normals.size(); ++n) out[n] = normals[n] * std::exp(log_std[n] - shift);
  return out;
}

std::size_t truncation_for(double alpha, double r_max, double rel_tolerance) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  if (!(r_max > 0.0 && r_max < 1.0)) throw std::invalid_argument("r_max must be in (0, 1)");
  const double r2 = r_max * r_max;
  // log of t_n = Gamma(alpha + n) / (n! Gamma(alpha)) r^{2n}; sum_n t_n = (1 - r^2)^{-alpha}.
  const double log_total = -alpha * std::log1p(-r2);
  const double log_bound = log_total + 2.0 * std::log(rel_tolerance);
  double log_t = 0.0;
  for (std::size_t n = 0;; ++n) {
    const double nd = static_cast<double>(n);
    const double q = (alpha + nd) / (nd + 1.0) * r2;
    // Past the peak the ratios decrease, so the tail is at most t_n / (1 - q).
    if (q < 1.0 && log_t - std::log1p(-q) < log_bound) return std::max<std::size_t>(n, 1);
    log_t += std::log(q);
    if (n > 100000000) throw std::invalid_argument("truncation does not converge");
  }
}

GafSample sample_gaf(double alpha, std::size_t truncation, std::uint64_t seed) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  if (truncation < 1) throw std::invalid_argument("truncation must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  GafSample g;
  g.alpha = alpha;
  g.seed = seed;
  g.normals.resize(truncation);
  g.log_std.resize(truncation);
  for (std::size_t n = 0; n < truncation; ++n) {
    const double re = normal(rng);
    const double im = normal(rng);
    g.normals[n] = {re, im};
    const double nd = static_cast<double>(n);
    g.log_std[n] = 0.5 * (std::lgamma(alpha + nd) - std::lgamma(nd + 1.0));
  }
  return g;
}

GafSample gaf_from_coefficients(const std::vector<Complex>& coeffs, double alpha) {
  GafSample g;
  g.alpha = alpha;
  g.normals = coeffs;
  g.log_std.assign(coeffs.size(), 0.0);
  return g;
}

std::vector<Complex> gaf_zeros(const GafSample& g, double r_max) {
  if (!(r_max > 0.0 && r_max < 1.0)) throw std::invalid_argument("r_max must be in (0, 1)");
  const std::size_t n_t = g.truncation();
  if (n_t <= 1) return {};
  // Polynomial in u = w / r_max, scaled so the largest standard deviation is 1.
  const double log_r = std::log(r_max);
  double shift = -INFINITY;
  for (std::size_t n = 0; n < n_t; ++n) {
    shift = std::max(shift, g.log_std[n] + static_cast<double>(n) * log_r);
  }
  std::vector<Complex> c(n_t);
  for (std::size_t n = 0; n < n_t; ++n) {
    c[n] = g.normals[n] * std::exp(g.log_std[n] + static_cast<double>(n) * log_r - shift);
  }
  bool any = false;
  for (const auto& v : c) any = any || v != Complex(0.0, 0.0);
  if (!any) return {};

  std::vector<Complex> out;
  for (const Complex u : polynomial_roots(c)) {
    if (std::abs(u) > 1.0) continue;
    const double res = poly_relative_residual(c, u);
    if (!(res < 1e-8)) {
      throw ConvergenceError("GAF root residual " + std::to_string(res) + " above 1e-8 (seed " +
                             std::to_string(g.seed) + ")");
    }
    out.push_back(u * r_max);
  }
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  return out;
}

double theoretical_intensity(double alpha, MetricConvention convention) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  const double rho = alpha / std::numbers::pi;
  return convention == MetricConvention::unit ? rho : 0.25 * rho;
}

double theoretical_pair_correlation(double alpha, double r) {
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("r must be in (0, 1)");
  using ld = long double;
  const ld a = alpha;
  const ld eps = static_cast<ld>(r) * r;
  const ld s = 1.0L - eps;
  const ld log_s = std::log1p(-eps);
  const ld s_a = std::exp(a * log_s);
  const ld one_minus_s_a = -std::expm1(a * log_s);
  const ld t1 = a * eps - s * one_minus_s_a;
  const ld t2 = a * s_a * eps - one_minus_s_a;
  const ld num = s_a * t1 * t1 + t2 * t2;
  const ld den = one_minus_s_a * one_minus_s_a * one_minus_s_a;
  return static_cast<double>(num / den);
}

double expected_zero_count_disk(double alpha, double r) {
  if (!(r >= 0.0 && r < 1.0)) throw std::invalid_argument("r must be in [0, 1)");
  return alpha * r * r / (1.0 - r * r);
}

}  // namespace ast
