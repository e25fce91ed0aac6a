#pragma once

#include "ast/geometry.hpp"

namespace ast {

/// Cauchy wavelet order. alpha = 2 beta + 1 is the matching hyperbolic GAF
/// parameter.
class WindowParams {
 public:
  static WindowParams from_beta(double beta);
  static WindowParams from_alpha(double alpha);

  double beta() const { return beta_; }
  double alpha() const { return 2.0 * beta_ + 1.0; }

 private:
  explicit WindowParams(double beta) : beta_(beta) {}
  double beta_;
};

/// nu^beta e^{-2 pi nu} for nu >= 0, zero otherwise.
double cauchy_wavelet_ft(double nu, WindowParams p);

/// Generalized Laguerre polynomial L_n^{(a)}(mu) by the three-term recurrence.
double laguerre(unsigned n, double a, double mu);

/// Fourier transform of the n-th basis function,
///   sqrt(n!/Gamma(2b+n+1)) 2pi e^{-2 pi nu} (2pi)^{2b} nu^b L_n^{(2b)}(4 pi nu),
/// extended by zero to negative frequencies.
double basis_ft(unsigned n, double nu, WindowParams p);

/// Nonvanishing factor linking the transform to the Cauchy wavelet transform:
/// lambda(x, xi) = xi^{-beta} e^{-2 pi i xi x}.
Complex lambda_factor(double x, double xi, WindowParams p);
/// Complex logarithm of lambda_factor; finite where lambda itself overflows.
Complex log_lambda_factor(double x, double xi, WindowParams p);

/// eta(x, xi) = lambda(x, xi) (i / (x + i/xi + i))^{2 beta + 1}. Never zero.
Complex eta_beta(double x, double xi, WindowParams p);
Complex log_eta_beta(double x, double xi, WindowParams p);

/// Closed-form transform of the n-th basis function,
///   eta(x, xi) sqrt(Gamma(2b+n+1)/n!) theta(x + i/xi)^n,
/// with theta the Cayley map.
Complex closed_form_ast_basis(unsigned n, double x, double xi, WindowParams p);

/// Log-domain form of closed_form_ast_basis. Returns a real part of -inf
/// where the value is exactly zero (n >= 1 at x = 0, xi = 1).
Complex log_closed_form_ast_basis(unsigned n, double x, double xi, WindowParams p);

}  // namespace ast
