#include "ast/analytic_window.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace ast {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

void require_positive_xi(double xi) {
  if (!(xi > 0.0)) throw std::domain_error("frequency xi must be > 0");
}

// log sqrt(Gamma(2b + n + 1) / n!)
double log_basis_amplitude(unsigned n, double beta) {
  return 0.5 * (std::lgamma(2.0 * beta + n + 1.0) - std::lgamma(n + 1.0));
}

}  // namespace

WindowParams WindowParams::from_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("window parameter beta must be > 0");
  }
  return WindowParams(beta);
}

WindowParams WindowParams::from_alpha(double alpha) {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("alpha must be > 1 (beta = (alpha - 1)/2 > 0)");
  }
  return WindowParams(0.5 * (alpha - 1.0));
}

double cauchy_wavelet_ft(double nu, WindowParams p) {
  if (nu < 0.0) return 0.0;
  if (nu == 0.0) return 0.0;
  return std::exp(p.beta() * std::log(nu) - kTwoPi * nu);
}

double laguerre(unsigned n, double a, double mu) {
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 + a - mu;
  for (unsigned k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + a - mu) * cur - (k + a) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double basis_ft(unsigned n, double nu, WindowParams p) {
  if (nu <= 0.0) return 0.0;
  const double beta = p.beta();
  const double log_amp = -log_basis_amplitude(n, beta) + (1.0 + 2.0 * beta) * std::log(kTwoPi) -
                         kTwoPi * nu + beta * std::log(nu);
  return std::exp(log_amp) * laguerre(n, 2.0 * beta, 2.0 * kTwoPi * nu);
}

Complex log_lambda_factor(double x, double xi, WindowParams p) {
  require_positive_xi(xi);
  return {-p.beta() * std::log(xi), -kTwoPi * xi * x};
}

Complex lambda_factor(double x, double xi, WindowParams p) {
  return std::exp(log_lambda_factor(x, xi, p));
}

Complex log_eta_beta(double x, double xi, WindowParams p) {
  // i/(z + i) has positive real part in the upper half-plane, so the
  // principal logarithm is continuous there.
  const Complex z(x, 1.0 / xi);
  return log_lambda_factor(x, xi, p) + p.alpha() * std::log(kI / (z + kI));
}

Complex eta_beta(double x, double xi, WindowParams p) {
  return std::exp(log_eta_beta(x, xi, p));
}

Complex log_closed_form_ast_basis(unsigned n, double x, double xi, WindowParams p) {
  const Complex log_head = log_eta_beta(x, xi, p) + log_basis_amplitude(n, p.beta());
  if (n == 0) return log_head;
  const Complex theta = cayley_to_disk({x, 1.0 / xi}).value();
  if (theta == Complex(0.0, 0.0)) {
    return {-std::numeric_limits<double>::infinity(), 0.0};
  }
  return log_head + static_cast<double>(n) * std::log(theta);
}

Complex closed_form_ast_basis(unsigned n, double x, double xi, WindowParams p) {
  const Complex l = log_closed_form_ast_basis(n, x, xi, p);
  if (std::isinf(l.real())) return {0.0, 0.0};
  return std::exp(l);
}

}  // namespace ast
