#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace ast {

/// Raised when an iterative solver fails to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Horner evaluation of sum_k c[k] z^k.
std::complex<double> poly_eval(const std::vector<std::complex<double>>& c, std::complex<double> z);

/// Backward-error residual |p(z)| / sum_k |c_k| |z|^k.
double poly_relative_residual(const std::vector<std::complex<double>>& c, std::complex<double> z);

/// All roots of sum_k c[k] z^k (ascending coefficients). Leading zero
/// coefficients are trimmed and trailing low-order zeros become roots at the
/// origin. Roots come from the eigenvalues of the balanced companion matrix
/// and are then polished with a few Newton steps.
std::vector<std::complex<double>> polynomial_roots(std::vector<std::complex<double>> c);

}  // namespace ast
