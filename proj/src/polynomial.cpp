#include "ast/polynomial.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace ast {

using cd = std::complex<double>;

cd poly_eval(const std::vector<cd>& c, cd z) {
  cd acc(0.0, 0.0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double poly_relative_residual(const std::vector<cd>& c, cd z) {
  const double r = std::abs(z);
  double norm = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) norm = norm * r + std::abs(*it);
  if (norm == 0.0) return 0.0;
  return std::abs(poly_eval(c, z)) / norm;
}

namespace {

cd poly_derivative_eval(const std::vector<cd>& c, cd z) {
  cd acc(0.0, 0.0);
  for (std::size_t k = c.size() - 1; k >= 1; --k) acc = acc * z + static_cast<double>(k) * c[k];
  return acc;
}

// Parlett-Reinsch balancing with radix 2 (exact scaling, no rounding).
void balance(Eigen::MatrixXcd& a) {
  const Eigen::Index n = a.rows();
  constexpr double radix = 2.0;
  constexpr double sqrdx = radix * radix;
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double r = 0.0;
      double c = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

}  // namespace

std::vector<cd> polynomial_roots(std::vector<cd> c) {
  while (!c.empty() && c.back() == cd(0.0, 0.0)) c.pop_back();
  if (c.empty()) throw std::invalid_argument("zero polynomial has no isolated roots");
  std::size_t origin = 0;
  while (c[origin] == cd(0.0, 0.0)) ++origin;
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(origin));

  std::vector<cd> roots(origin, cd(0.0, 0.0));
  const std::size_t d = c.size() - 1;
  if (d == 0) return roots;
  if (d == 1) {
    roots.push_back(-c[0] / c[1]);
    return roots;
  }

  const auto n = static_cast<Eigen::Index>(d);
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) comp(0, k) = -c[d - 1 - static_cast<std::size_t>(k)] / c[d];
  for (Eigen::Index k = 1; k < n; ++k) comp(k, k - 1) = 1.0;
  balance(comp);

  // The balanced companion matrix is already upper Hessenberg, so the Schur
  // iteration starts directly from it. Eigen's deflation test keeps the small
  // roots of these strongly graded matrices accurate; LAPACK's Hessenberg QR
  // does not.
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(n);
  schur.computeFromHessenberg(comp, Eigen::MatrixXcd(), false);
  if (schur.info() != Eigen::Success) {
    throw ConvergenceError("companion eigenvalue solver did not converge (degree " +
                           std::to_string(d) + ")");
  }
  const auto& tri = schur.matrixT();
  for (Eigen::Index k = 0; k < n; ++k) {
    cd z = tri(k, k);
    double res = std::abs(poly_eval(c, z));
    for (int it = 0; it < 3 && std::isfinite(res) && res > 0.0; ++it) {
      const cd dp = poly_derivative_eval(c, z);
      if (dp == cd(0.0, 0.0)) break;
      const cd next = z - poly_eval(c, z) / dp;
      const double next_res = std::abs(poly_eval(c, next));
      if (!(next_res < res)) break;
      z = next;
      res = next_res;
    }
    roots.push_back(z);
  }
  return roots;
}

}  // namespace ast
