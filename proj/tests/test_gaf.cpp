#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ast/gaf.hpp"
#include "ast/polynomial.hpp"
#include "ast/spatial_stats.hpp"

using namespace ast;

TEST_CASE("sampling is deterministic and representable") {
  const auto a = sample_gaf(10.0, 50, 7);
  const auto b = sample_gaf(10.0, 50, 7);
  CHECK(a.normals == b.normals);
  CHECK(a.log_std == b.log_std);
  CHECK(a.normals != sample_gaf(10.0, 50, 8).normals);
  const auto big = sample_gaf(500.0, 4001, 1);
  for (const auto& c : big.coefficients()) {
    CHECK(std::isfinite(c.real()));
    CHECK(std::isfinite(c.imag()));
  }
  CHECK(std::isfinite(big.log_scale()));
  // Standard deviation ratio between consecutive coefficients.
  const double n = 12.0;
  CHECK(std::exp(a.log_std[13] - a.log_std[12]) ==
        doctest::Approx(std::sqrt((10.0 + n) / (n + 1.0))).epsilon(1e-12));
  CHECK_THROWS_AS(sample_gaf(0.0, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_gaf(1.0, 0, 1), std::invalid_argument);
}

TEST_CASE("degenerate zero sets") {
  CHECK(gaf_zeros(sample_gaf(5.0, 1, 3), 0.9).empty());
  const auto z = gaf_zeros(gaf_from_coefficients({0.0, 1.0, 0.0, 0.0}), 0.5);
  REQUIRE(z.size() == 1);
  CHECK(std::abs(z[0]) < 1e-15);
  const double c = 2.5;
  CHECK(gaf_zeros(gaf_from_coefficients({-c, c, 0.0}), 0.99).empty());
  CHECK_THROWS_AS(gaf_zeros(sample_gaf(5.0, 10, 1), 1.0), std::invalid_argument);
}

TEST_CASE("zeros do not depend on a global coefficient factor") {
  const auto g = sample_gaf(20.0, 120, 4);
  auto h = g;
  for (auto& l : h.log_std) l += 40.0;
  auto k = g;
  for (auto& v : k.normals) v *= Complex(0.0, -3.0);
  const auto zg = gaf_zeros(g, 0.8);
  const auto zh = gaf_zeros(h, 0.8);
  const auto zk = gaf_zeros(k, 0.8);
  REQUIRE(zg.size() == zh.size());
  REQUIRE(zg.size() == zk.size());
  for (std::size_t i = 0; i < zg.size(); ++i) {
    CHECK(std::abs(zg[i] - zh[i]) < 1e-10);
    CHECK(std::abs(zg[i] - zk[i]) < 1e-10);
  }
}

TEST_CASE("truncation rule against the summed variance tail") {
  for (double alpha : {2.0, 10.0, 300.0}) {
    for (double r : {0.5, 0.9}) {
      const std::size_t n = truncation_for(alpha, r);
      // Direct sum of t_k = Gamma(alpha + k) / (k! Gamma(alpha)) r^{2k} from k = n.
      double tail = 0.0;
      for (std::size_t k = n; k < n + 20000; ++k) {
        tail += std::exp(std::lgamma(alpha + k) - std::lgamma(k + 1.0) - std::lgamma(alpha) +
                         2.0 * k * std::log(r));
      }
      const double total = std::pow(1.0 - r * r, -alpha);
      CHECK(tail < 1e-16 * total);
      // One coefficient fewer would not satisfy the rule by a wide margin.
      const double prev = std::exp(std::lgamma(alpha + n - 1) - std::lgamma(static_cast<double>(n)) -
                                   std::lgamma(alpha) + 2.0 * (n - 1) * std::log(r));
      CHECK(tail + prev > 1e-18 * total);
    }
  }
}

TEST_CASE("zero count oracle at alpha = 10") {
  const double alpha = 10.0;
  const double r = 0.9;
  const std::size_t n_t = truncation_for(alpha, r);
  const int seeds = 60;
  double sum = 0.0;
  double sum2 = 0.0;
  for (int s = 0; s < seeds; ++s) {
    const double k = static_cast<double>(gaf_zeros(sample_gaf(alpha, n_t, 500 + s), r).size());
    sum += k;
    sum2 += k * k;
  }
  const double mean = sum / seeds;
  const double se = std::sqrt((sum2 / seeds - mean * mean) / seeds);
  CHECK(std::abs(mean - expected_zero_count_disk(alpha, r)) < 3.0 * se);
}

TEST_CASE("intensity conventions") {
  CHECK(theoretical_intensity(300.0, MetricConvention::unit) == doctest::Approx(95.4929658551372));
  CHECK(theoretical_intensity(std::numbers::pi, MetricConvention::unit) == doctest::Approx(1.0));
  CHECK(theoretical_intensity(8.0, MetricConvention::factor4) == doctest::Approx(2.0 / std::numbers::pi));
  const double r = 0.7;
  const double rp = pseudo_to_hyperbolic(r);
  for (auto c : {MetricConvention::unit, MetricConvention::factor4}) {
    CHECK(theoretical_intensity(12.0, c) * hyperbolic_disk_area(rp, c) ==
          doctest::Approx(expected_zero_count_disk(12.0, r)).epsilon(1e-12));
  }
  CHECK(expected_zero_count_disk(10.0, 0.9) == doctest::Approx(42.631578947368));
}

TEST_CASE("pair correlation closed form checkpoints") {
  CHECK(std::abs(theoretical_pair_correlation(1.0, std::sqrt(0.5)) - 0.75) < 1e-12);
  for (double r : {0.1, 0.4, 0.8}) {
    CHECK(theoretical_pair_correlation(1.0, r) ==
          doctest::Approx(1.0 - std::pow(1.0 - r * r, 2)).epsilon(1e-12));
  }
  for (double alpha : {1.0, 50.0, 500.0}) {
    CHECK(std::abs(theoretical_pair_correlation(alpha, 1.0 - 1e-9) - 1.0) < 1e-12);
    const double r = 1e-4;
    CHECK(theoretical_pair_correlation(alpha, r) / (r * r) ==
          doctest::Approx((alpha + 1.0) * (alpha + 1.0) / (2.0 * alpha)).epsilon(1e-3));
  }
  for (double alpha : {0.5, 1.0, 10.0, 50.0, 300.0, 500.0}) {
    for (double r = 1e-4; r < 1.0; r += 0.0037) {
      const double g = theoretical_pair_correlation(alpha, r);
      CHECK(std::isfinite(g));
      CHECK(g >= 0.0);
    }
  }
  CHECK_THROWS_AS(theoretical_pair_correlation(2.0, 0.0), std::invalid_argument);
}

TEST_CASE("pair-correlation estimate is invariant under a disk isometry") {
  // Points and window move together; compare binned estimates over 100 seeds.
  const double alpha = 10.0;
  const double radius = 0.9;
  const std::size_t n_t = truncation_for(alpha, radius);
  const auto bins = make_r_bins(0.05, 0.5, 0.01);
  const double h = 0.01;
  const double guard = 0.5 + 0.5 * h;
  const auto win = ObservationWindow::disk(radius);
  const auto t = DiskIsometry::moving_origin_to(DiskPoint(0.3, -0.4), 1.1);
  const auto moved_win = win.transformed(t, 0.001);
  std::vector<double> ga(bins.size(), 0.0);
  std::vector<double> gb(bins.size(), 0.0);
  const int seeds = 100;
  for (int s = 0; s < seeds; ++s) {
    const auto pts = gaf_zeros(sample_gaf(alpha, n_t, 900 + s), radius);
    std::vector<Complex> moved;
    for (const auto& z : pts) moved.push_back(t.apply(z));
    const auto a = estimate_pair_correlation(pts, classify_inner(pts, win, guard), bins, h, alpha);
    const auto b = estimate_pair_correlation(moved, classify_inner(moved, moved_win, guard), bins, h,
                                             alpha);
    for (std::size_t k = 0; k < bins.size(); ++k) {
      ga[k] += a.g[k] / seeds;
      gb[k] += b.g[k] / seeds;
    }
  }
  for (std::size_t k = 0; k < bins.size(); ++k) CHECK(std::abs(ga[k] - gb[k]) < 0.05);
}
