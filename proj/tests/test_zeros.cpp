#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ast/zeros.hpp"

using namespace ast;

namespace {

TFMatrix constant_matrix(std::size_t n, std::size_t m, Complex v) {
  TFMatrix s;
  s.time_grid = make_centered_time_grid(n, static_cast<double>(n));
  s.freq_grid = make_freq_grid(1.0, 8.0, m);
  s.params = WindowParams::from_alpha(5.0);
  s.values.assign(n * m, v);
  return s;
}

EdgeGuard bare_guard() {
  EdgeGuard g;
  g.channel_guard = 0;
  g.time_margin = false;
  return g;
}

}  // namespace

TEST_CASE("constant modulus has no zeros") {
  const auto s = constant_matrix(16, 12, Complex(0.0, 1.0));
  CHECK(detect_zeros(s, bare_guard()).entries.empty());
}

TEST_CASE("a single low cell is the only zero") {
  auto s = constant_matrix(16, 12, 1.0);
  s(7, 5) = 0.0;
  const auto zs = detect_zeros(s, bare_guard());
  REQUIRE(zs.entries.size() == 1);
  CHECK(zs.entries[0].j == 7);
  CHECK(zs.entries[0].m == 5);
  CHECK(zs.entries[0].x == s.time_grid.at(7));
  CHECK(zs.entries[0].xi == s.freq_grid.at(5));
  CHECK(std::abs(zs.entries[0].w - cayley_to_disk({s.time_grid.at(7), 1.0 / s.freq_grid.at(5)}).value()) ==
        0.0);
}

TEST_CASE("ties and borders yield no zero") {
  auto s = constant_matrix(16, 12, 1.0);
  s(7, 5) = 0.0;
  s(8, 5) = 0.0;  // plateau of two equal minima
  s(0, 3) = 0.0;  // border cell
  CHECK(detect_zeros(s, bare_guard()).entries.empty());
}

TEST_CASE("four versus eight neighbors") {
  auto s = constant_matrix(16, 12, 1.0);
  s(7, 5) = 0.2;
  s(8, 6) = 0.1;  // diagonal neighbor is lower
  CHECK(detect_zeros(s, bare_guard(), Neighborhood::eight).entries.size() == 1);
  CHECK(detect_zeros(s, bare_guard(), Neighborhood::four).entries.size() == 2);
}

TEST_CASE("degenerate grids are rejected") {
  const auto s = constant_matrix(16, 12, 1.0);
  TFMatrix small = s;
  small.freq_grid = make_freq_grid(1.0, 2.0, 2);
  small.values.resize(32);
  CHECK_THROWS_AS(detect_zeros(small), std::invalid_argument);
}

TEST_CASE("disk mapping examples") {
  ZeroSet zs;
  zs.entries.push_back({0, 0, 0.0, 1.0, {}});
  zs.entries.push_back({0, 0, 0.0, 0.5, {}});
  zs = map_zeros_to_disk(zs);
  CHECK(std::abs(zs.entries[0].w) < 1e-15);
  CHECK(std::abs(zs.entries[1].w - Complex(1.0 / 3.0, 0.0)) < 1e-15);
}

TEST_CASE("zero sets of white noise: determinism, scale invariance, guard monotonicity") {
  const auto p = WindowParams::from_alpha(40.0);
  const auto tg = make_centered_time_grid(400, 200.0);
  const auto fg = make_freq_grid(1.0, 30.0, 120);
  const auto s = dast_spectral(sample_white_noise(tg, 3), fg, p);
  const auto a = detect_zeros(s);
  const auto b = detect_zeros(s);
  REQUIRE(a.entries.size() > 10);
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t k = 0; k < a.entries.size(); ++k) {
    CHECK(a.entries[k].j == b.entries[k].j);
    CHECK(a.entries[k].m == b.entries[k].m);
    CHECK(std::abs(a.entries[k].w) < 1.0);
  }
  // Multiplying by 2i scales every modulus by exactly 2.
  TFMatrix scaled = s;
  for (auto& v : scaled.values) v *= Complex(0.0, 2.0);
  const auto c = detect_zeros(scaled);
  REQUIRE(c.entries.size() == a.entries.size());
  for (std::size_t k = 0; k < a.entries.size(); ++k) CHECK(c.entries[k].j == a.entries[k].j);
  // Larger guards only remove zeros.
  EdgeGuard wide;
  wide.border = 5;
  wide.channel_guard = 10;
  wide.envelope_level = 1e-6;
  const auto d = detect_zeros(s, wide);
  CHECK(d.entries.size() < a.entries.size());
  for (const auto& z : d.entries) {
    bool found = false;
    for (const auto& y : a.entries) found = found || (y.j == z.j && y.m == z.m);
    CHECK(found);
  }
  // Output is ordered by (m, j).
  for (std::size_t k = 1; k < a.entries.size(); ++k) {
    const auto& u = a.entries[k - 1];
    const auto& v = a.entries[k];
    CHECK((u.m < v.m || (u.m == v.m && u.j < v.j)));
  }
}

TEST_CASE("expected zero count against the disk intensity integral") {
  // alpha/pi |dw/dz|^2 / (1 - |w|^2)^2 integrated over the cells in (x, y).
  const auto p = WindowParams::from_alpha(30.0);
  const auto tg = make_centered_time_grid(300, 100.0);
  const auto fg = make_freq_grid(2.0, 20.0, 40);
  const auto region = guarded_region(tg, fg, p);
  const double alpha = 30.0;
  const double half = std::exp2(0.5 * fg.delta_log2);
  double integral = 0.0;
  for (std::size_t m = region.m_begin; m < region.m_end; ++m) {
    if (region.j_end[m] <= region.j_begin[m]) continue;
    const double x0 = tg.at(region.j_begin[m]) - 0.5 * tg.delta_x;
    const double x1 = tg.at(region.j_end[m] - 1) + 0.5 * tg.delta_x;
    const double y0 = 1.0 / (fg.at(m) * half);
    const double y1 = 1.0 / (fg.at(m) / half);
    const int nx = 40;
    const int ny = 200;
    for (int a = 0; a < nx; ++a) {
      for (int b = 0; b < ny; ++b) {
        const Complex z(x0 + (a + 0.5) * (x1 - x0) / nx, y0 + (b + 0.5) * (y1 - y0) / ny);
        const Complex w = (z - Complex(0, 1)) / (z + Complex(0, 1));
        const Complex dw = Complex(0, 2) / ((z + Complex(0, 1)) * (z + Complex(0, 1)));
        integral += alpha / std::numbers::pi * std::norm(dw) / std::pow(1.0 - std::norm(w), 2) *
                    (x1 - x0) / nx * (y1 - y0) / ny;
      }
    }
  }
  CHECK(expected_zero_count(region, tg, fg, alpha) == doctest::Approx(integral).epsilon(1e-4));
}

TEST_CASE("region outline encloses exactly the valid cells") {
  const auto p = WindowParams::from_alpha(30.0);
  const auto tg = make_centered_time_grid(300, 100.0);
  const auto fg = make_freq_grid(2.0, 20.0, 40);
  const auto region = guarded_region(tg, fg, p);
  const auto poly = region_outline(region, tg, fg);
  // Shoelace area in (x, xi) equals the summed cell areas.
  double area = 0.0;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const auto& a = poly[k];
    const auto& b = poly[(k + 1) % poly.size()];
    area += a.x * (1.0 / b.y) - b.x * (1.0 / a.y);
  }
  area *= 0.5;
  const double half = std::exp2(0.5 * fg.delta_log2);
  double cells = 0.0;
  for (std::size_t m = region.m_begin; m < region.m_end; ++m) {
    cells += (region.j_end[m] - region.j_begin[m]) * tg.delta_x * fg.at(m) * (half - 1.0 / half);
  }
  CHECK(area == doctest::Approx(cells).epsilon(1e-10));
  CHECK(region.contains(region.j_begin[20], 20));
  CHECK_FALSE(region.contains(region.j_end[20], 20));
  CHECK_FALSE(region.contains(150, 0));
}

TEST_CASE("white noise at full resolution matches the expected count") {
  const auto p = WindowParams::from_alpha(300.0);
  const auto tg = make_centered_time_grid(4000, 400.0);
  const auto fg = make_freq_grid(std::exp2(-6.0), std::exp2(3.3), 600);
  const auto zs = detect_zeros(dast_spectral(sample_white_noise(tg, 17), fg, p));
  // The top channels pass beyond 200 Hz and are dropped.
  CHECK(zs.region.m_end < fg.n_channels - 2);
  CHECK(log_nyquist_leakage(tg, fg.at(zs.region.m_end - 1), p) <= std::log(1e-4));
  CHECK(log_nyquist_leakage(tg, fg.at(zs.region.m_end), p) > std::log(1e-4));
  const double expect = expected_zero_count(zs.region, tg, fg, 300.0);
  MESSAGE("zeros " << zs.entries.size() << " expected " << expect);
  CHECK(std::abs(zs.entries.size() / expect - 1.0) < 0.1);
}
