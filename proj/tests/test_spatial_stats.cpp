#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "ast/experiment.hpp"
#include "ast/spatial_stats.hpp"
#include "ast/zeros.hpp"
#include "poisson.hpp"

using namespace ast;

TEST_CASE("window construction and containment") {
  CHECK_THROWS_AS(ObservationWindow::disk(1.0), std::invalid_argument);
  CHECK_THROWS_AS(ObservationWindow::polygon({0.1, 0.2}), std::invalid_argument);
  const auto d = ObservationWindow::disk(0.8);
  CHECK(d.contains(0.79));
  CHECK_FALSE(d.contains(Complex(0.0, 0.81)));
  CHECK(d.distance_to_boundary(0.0) == doctest::Approx(0.8));
  // Half-plane square [-1, 1] x [0.5, 2] around i.
  const auto w = ObservationWindow::from_halfplane_polygon(
      {{-1.0, 0.5}, {1.0, 0.5}, {1.0, 2.0}, {-1.0, 2.0}});
  CHECK(w.contains(0.0));
  CHECK_FALSE(w.contains(cayley_to_disk({0.0, 3.0}).value()));
  CHECK_FALSE(w.contains(cayley_to_disk({1.5, 1.0}).value()));
  // Distance from i to the edge y = 2 is |i - 2i| / |i + 2i| = 1/3.
  CHECK(w.distance_to_boundary(0.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("inner classification") {
  const auto d = ObservationWindow::disk(0.9);
  const std::vector<Complex> pts{0.0, 0.9 * std::polar(1.0, 0.3), Complex(0.95, 0.0)};
  const auto mask = classify_inner(pts, d, 0.2);
  CHECK(mask[0] == 1);
  CHECK(mask[1] == 0);
  CHECK(mask[2] == 0);
  const auto w = ObservationWindow::from_halfplane_polygon(
      {{-1.0, 0.5}, {1.0, 0.5}, {1.0, 2.0}, {-1.0, 2.0}});
  CHECK(classify_inner({w.boundary()[10]}, w, 1e-6)[0] == 0);
  CHECK_THROWS_AS(classify_inner(pts, d, 0.0), std::invalid_argument);
}

TEST_CASE("inner fraction for the full-resolution window matches a dense brute-force boundary") {
  const auto p = WindowParams::from_alpha(300.0);
  const auto tg = make_centered_time_grid(4000, 400.0);
  const auto fg = make_freq_grid(std::exp2(-6.0), std::exp2(3.3), 600);
  const auto region = guarded_region(tg, fg, p);
  const auto outline = region_outline(region, tg, fg);
  const auto win = ObservationWindow::from_halfplane_polygon(outline);
  const auto dense = ObservationWindow::from_halfplane_polygon(outline, 0.0005);
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::size_t> pick_m(region.m_begin, region.m_end - 1);
  std::vector<Complex> pts;
  while (pts.size() < 400) {
    const std::size_t m = pick_m(rng);
    if (region.j_end[m] <= region.j_begin[m]) continue;
    std::uniform_int_distribution<std::size_t> pick_j(region.j_begin[m], region.j_end[m] - 1);
    pts.push_back(cayley_to_disk({tg.at(pick_j(rng)), 1.0 / fg.at(m)}).value());
  }
  const auto mask = classify_inner(pts, win, 0.3);
  std::size_t inner = 0;
  std::size_t brute = 0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    inner += mask[k];
    double best = std::numeric_limits<double>::infinity();
    for (const auto& b : dense.boundary()) best = std::min(best, pseudo_hyperbolic_distance(pts[k], b));
    brute += best > 0.3;
  }
  CHECK(inner > 0);
  CHECK(std::abs(static_cast<double>(inner) - static_cast<double>(brute)) <= 0.01 * pts.size());
}

TEST_CASE("intensity estimator") {
  CHECK(estimate_intensity({}, 0.0, 1.0) == 0.0);
  CHECK(estimate_intensity({0.3}, 0.3, 0.7) == doctest::Approx(1.0 / hyperbolic_disk_area(0.7)));
  CHECK(estimate_intensity({0.3}, 0.3, 0.7, MetricConvention::unit) ==
        doctest::Approx(1.0 / hyperbolic_disk_area(0.7, MetricConvention::unit)));
  CHECK_THROWS_AS(estimate_intensity({0.1}, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("intensity of a Poisson sample") {
  // kappa against dA/(1-|w|^2)^2 equals kappa/4 against the factor4 metric.
  std::mt19937_64 rng(12);
  const double kappa = 40.0 / std::numbers::pi;
  const auto pts = testing::poisson_disk(kappa, 0.95, rng);
  const double rp = 3.0;
  const double a = hyperbolic_disk_area(rp, MetricConvention::unit);
  const double est = estimate_intensity(pts, 0.0, rp, MetricConvention::unit);
  CHECK(std::abs(est - kappa) < 3.0 * std::sqrt(kappa * a) / a);
  const double est4 = estimate_intensity(pts, 0.0, rp, MetricConvention::factor4);
  CHECK(est4 == doctest::Approx(est / 4.0));
}

TEST_CASE("pair counting arithmetic") {
  const double r0 = 0.3;
  const std::vector<Complex> pts{0.0, r0};
  const auto bins = make_r_bins(0.1, 0.5, 0.1);
  const auto st = estimate_pair_correlation(pts, {1, 1}, bins, 0.05, 2.0);
  CHECK(st.n_centers == 2);
  for (std::size_t k = 0; k < bins.size(); ++k) {
    CHECK(st.n_pairs[k] == (std::abs(bins[k] - r0) < 1e-9 ? 2u : 0u));
  }
  const double w = std::pow(1.0 - r0 * r0, 2);
  CHECK(st.g[2] == doctest::Approx(w / (2.0 * 2.0 * 0.05 * r0 * 2.0) * 2.0));
  const auto pr = estimate_pair_correlation(pts, {1, 1}, bins, 0.05, 2.0, PairNormalization::printed);
  CHECK(pr.g[2] == doctest::Approx(w / (4.0 * 2.0 * 0.05 * r0) * 2.0));
  CHECK_THROWS_AS(estimate_pair_correlation(pts, {0, 0}, bins, 0.05, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(estimate_pair_correlation(pts, {1, 1}, {0.01}, 0.05, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(estimate_pair_correlation(pts, {1}, bins, 0.05, 2.0), std::invalid_argument);
}

TEST_CASE("Poisson samples give g close to 1") {
  std::mt19937_64 rng(99);
  const double alpha = 30.0;
  const double radius = 0.9;
  const auto bins = make_r_bins(0.1, 0.5, 0.01);
  const double h = 0.01;
  const auto win = ObservationWindow::disk(radius);
  std::vector<double> mean(bins.size(), 0.0);
  for (int s = 0; s < 100; ++s) {
    const auto pts = testing::poisson_disk(alpha / std::numbers::pi, radius, rng);
    const auto st = estimate_pair_correlation(pts, classify_inner(pts, win, 0.505), bins, h, alpha);
    for (std::size_t k = 0; k < bins.size(); ++k) mean[k] += st.g[k] / 100.0;
  }
  double avg = 0.0;
  for (std::size_t k = 0; k < bins.size(); ++k) {
    CHECK(std::abs(mean[k] - 1.0) < 0.15);
    avg += mean[k] / bins.size();
  }
  CHECK(std::abs(avg - 1.0) < 0.05);
}

TEST_CASE("estimator invariances") {
  std::mt19937_64 rng(5);
  const double alpha = 30.0;
  const auto pts = testing::poisson_disk(alpha / std::numbers::pi, 0.85, rng);
  const auto bins = make_r_bins(0.02, 0.4, 0.01);
  const double h = 0.02;
  const double guard = 0.41;
  // A polygon window strictly inside the sampled disk.
  const auto win = ObservationWindow::from_halfplane_polygon({{-2.0, 0.3}, {2.0, 0.3}, {2.0, 3.0}, {-2.0, 3.0}});
  const auto mask = classify_inner(pts, win, guard);
  const auto base = estimate_pair_correlation(pts, mask, bins, h, alpha);

  SUBCASE("common isometry") {
    const auto t = DiskIsometry::moving_origin_to(DiskPoint(-0.2, 0.5), 0.4);
    std::vector<Complex> moved;
    for (const auto& z : pts) moved.push_back(t.apply(z));
    const auto st = estimate_pair_correlation(moved, classify_inner(moved, win.transformed(t), guard),
                                              bins, h, alpha);
    CHECK(st.n_centers == base.n_centers);
    for (std::size_t k = 0; k < bins.size(); ++k) CHECK(st.n_pairs[k] == base.n_pairs[k]);
  }
  SUBCASE("points outside the window are never read") {
    std::vector<Complex> kept;
    std::vector<std::uint8_t> kept_mask;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (win.contains(pts[i])) {
        kept.push_back(pts[i]);
        kept_mask.push_back(mask[i]);
      }
    }
    REQUIRE(kept.size() < pts.size());
    const auto st = estimate_pair_correlation(kept, kept_mask, bins, h, alpha);
    for (std::size_t k = 0; k < bins.size(); ++k) CHECK(st.n_pairs[k] == base.n_pairs[k]);
  }
  SUBCASE("halving h and doubling the bins keeps interval means") {
    const auto fine_bins = make_r_bins(0.02, 0.4, 0.005);
    const auto fine = estimate_pair_correlation(pts, mask, fine_bins, h / 2.0, alpha);
    auto interval_mean = [](const RadialStats& s, double lo, double hi) {
      double acc = 0.0;
      int n = 0;
      for (std::size_t k = 0; k < s.r.size(); ++k) {
        if (s.r[k] >= lo && s.r[k] <= hi) {
          acc += s.g[k];
          ++n;
        }
      }
      return acc / n;
    };
    CHECK(std::abs(interval_mean(fine, 0.1, 0.4) - interval_mean(base, 0.1, 0.4)) < 0.05);
  }
}

TEST_CASE("bins") {
  const auto b = make_r_bins(0.01, 0.6, 0.005);
  CHECK(b.size() == 119);
  CHECK(b.front() == 0.01);
  CHECK(b.back() == doctest::Approx(0.6));
  CHECK_THROWS_AS(make_r_bins(0.1, 0.05, 0.01), std::invalid_argument);
}
