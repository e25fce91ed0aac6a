#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ast/geometry.hpp"

using namespace ast;

TEST_CASE("cayley map sends i to the origin and 2i to 1/3") {
  CHECK(std::abs(cayley_to_disk({0.0, 1.0}).value()) < 1e-15);
  const Complex w = cayley_to_disk({0.0, 2.0}).value();
  CHECK(w.real() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(std::abs(w.imag()) < 1e-15);
}

TEST_CASE("cayley map and its inverse round-trip") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ux(-5.0, 5.0);
  std::uniform_real_distribution<double> uy(0.05, 5.0);
  for (int k = 0; k < 1000; ++k) {
    const UpperHalfPoint z{ux(rng), uy(rng)};
    const UpperHalfPoint back = cayley_from_disk(cayley_to_disk(z));
    CHECK(std::abs(back.x - z.x) < 1e-10 * (1.0 + std::abs(z.x)));
    CHECK(std::abs(back.y - z.y) < 1e-10 * (1.0 + z.y));
  }
}

TEST_CASE("domain checks") {
  CHECK_THROWS_AS(DiskPoint(Complex(1.0, 0.0)), std::domain_error);
  CHECK_THROWS_AS(cayley_to_disk({0.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(cayley_to_disk({0.0, -1.0}), std::domain_error);
  CHECK_THROWS_AS(cayley_from_disk(DiskPoint(1.0 - 1e-14, 0.0)), std::domain_error);
  CHECK_THROWS_AS(hyperbolic_disk_area(-1.0), std::domain_error);
  CHECK_THROWS_AS(parse_metric_convention("other"), std::invalid_argument);
}

TEST_CASE("pseudo-hyperbolic distance matches the half-plane formula") {
  // p(z1, z2) = |z1 - z2| / |z1 - conj(z2)| in the upper half-plane.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ux(-3.0, 3.0);
  std::uniform_real_distribution<double> uy(0.1, 3.0);
  for (int k = 0; k < 500; ++k) {
    const Complex z1(ux(rng), uy(rng));
    const Complex z2(ux(rng), uy(rng));
    const double expect = std::abs(z1 - z2) / std::abs(z1 - std::conj(z2));
    const double got = pseudo_hyperbolic_distance(cayley_to_disk({z1.real(), z1.imag()}),
                                                  cayley_to_disk({z2.real(), z2.imag()}));
    CHECK(got == doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("distance from the origin and the pseudo/hyperbolic conversion") {
  const DiskPoint o(0.0, 0.0);
  const DiskPoint a(0.5, 0.0);
  CHECK(pseudo_hyperbolic_distance(o, a) == doctest::Approx(0.5));
  CHECK(hyperbolic_distance(o, a) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
  for (double p : {1e-6, 0.1, 0.5, 0.9, 0.999}) {
    CHECK(hyperbolic_to_pseudo(pseudo_to_hyperbolic(p)) == doctest::Approx(p).epsilon(1e-13));
  }
}

TEST_CASE("isometries preserve distances and move the origin where asked") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  for (int k = 0; k < 200; ++k) {
    const DiskPoint c(u(rng), u(rng));
    const auto t = DiskIsometry::moving_origin_to(c, ang(rng));
    CHECK(std::abs(t.apply(0.0) - c.value()) < 1e-14);
    CHECK(std::norm(t.a) - std::norm(t.b) == doctest::Approx(1.0).epsilon(1e-12));
    const DiskPoint p(u(rng), u(rng));
    const DiskPoint q(u(rng), u(rng));
    CHECK(pseudo_hyperbolic_distance(t(p), t(q)) ==
          doctest::Approx(pseudo_hyperbolic_distance(p, q)).epsilon(1e-11));
  }
}

TEST_CASE("hyperbolic disk area in both conventions") {
  const double r = 1.3;
  const double s2 = std::pow(std::sinh(0.65), 2);
  CHECK(hyperbolic_disk_area(r) == doctest::Approx(4.0 * std::numbers::pi * s2));
  CHECK(hyperbolic_disk_area(r, MetricConvention::unit) == doctest::Approx(std::numbers::pi * s2));
  // The area element 4 dA / (1 - |w|^2)^2 integrated over |w| < tanh(r/2).
  const double rho = std::tanh(0.5 * r);
  double quad = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double t = (i + 0.5) / n * rho;
    quad += 4.0 * 2.0 * std::numbers::pi * t / std::pow(1.0 - t * t, 2) * (rho / n);
  }
  CHECK(quad == doctest::Approx(hyperbolic_disk_area(r)).epsilon(1e-6));
  // Intensity times area is convention free: alpha sinh^2(r/2).
  const double alpha = 7.0;
  CHECK(alpha / std::numbers::pi * hyperbolic_disk_area(r, MetricConvention::unit) ==
        doctest::Approx(alpha / (4.0 * std::numbers::pi) * hyperbolic_disk_area(r)));
}
