#include "ast/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ast {

std::size_t ValidRegion::n_cells() const {
  std::size_t n = 0;
  for (std::size_t m = m_begin; m < m_end; ++m) n += j_end[m] - j_begin[m];
  return n;
}

double log_nyquist_leakage(const TimeGrid& tg, double xi, WindowParams p) {
  const double beta = p.beta();
  const double u_peak = beta / (2.0 * std::numbers::pi);
  const double u = 0.5 / (tg.delta_x * xi);
  if (u <= u_peak) return 0.0;
  return beta * std::log(u / u_peak) - 2.0 * std::numbers::pi * (u - u_peak);
}

ValidRegion guarded_region(const TimeGrid& tg, const LogFreqGrid& fg, WindowParams p,
                           const EdgeGuard& guard) {
  const std::size_t n = tg.n_samples;
  const std::size_t m_count = fg.n_channels;
  const std::size_t border = std::max<std::size_t>(guard.border, 1);
  ValidRegion r;
  r.j_begin.assign(m_count, 0);
  r.j_end.assign(m_count, 0);
  const std::size_t edge = std::max(border, guard.channel_guard);
  if (2 * edge >= m_count) return r;
  r.m_begin = edge;
  r.m_end = m_count - edge;
  const double log_level = std::log(guard.nyquist_level);
  for (std::size_t m = r.m_begin; m < r.m_end; ++m) {
    if (log_nyquist_leakage(tg, fg.at(m), p) > log_level) {
      r.m_end = m;
      break;
    }
  }
  if (r.m_end <= r.m_begin) {
    r.m_begin = r.m_end = 0;
    return r;
  }
  std::vector<std::size_t> margin(m_count, 0);
  if (guard.time_margin) margin = time_guard_columns(tg, fg, p, guard.envelope_level);
  for (std::size_t m = r.m_begin; m < r.m_end; ++m) {
    const std::size_t lo = border + margin[m];
    if (2 * lo < n) {
      r.j_begin[m] = lo;
      r.j_end[m] = n - lo;
    }
  }
  return r;
}

std::vector<Complex> ZeroSet::disk_points() const {
  std::vector<Complex> out;
  out.reserve(entries.size());
  for (const auto& z : entries) out.push_back(z.w);
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> grid_minima(const std::vector<double>& modulus,
                                                             std::size_t n_time,
                                                             std::size_t n_channels,
                                                             const ValidRegion& region,
                                                             Neighborhood nb) {
  if (n_time < 3 || n_channels < 3) throw std::invalid_argument("zero detection needs N, M >= 3");
  if (modulus.size() != n_time * n_channels) {
    throw std::invalid_argument("modulus array does not match grid shape");
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t m_end = std::min(region.m_end, n_channels - 1);
  for (std::size_t m = std::max<std::size_t>(region.m_begin, 1); m < m_end; ++m) {
    const std::size_t j_end = std::min(region.j_end[m], n_time - 1);
    for (std::size_t j = std::max<std::size_t>(region.j_begin[m], 1); j < j_end; ++j) {
      const double c = modulus[m * n_time + j];
      bool is_min = true;
      for (int dm = -1; dm <= 1 && is_min; ++dm) {
        for (int dj = -1; dj <= 1; ++dj) {
          if (dm == 0 && dj == 0) continue;
          if (nb == Neighborhood::four && dm != 0 && dj != 0) continue;
          if (!(c < modulus[(m + dm) * n_time + (j + dj)])) {
            is_min = false;
            break;
          }
        }
      }
      if (is_min) out.emplace_back(j, m);
    }
  }
  return out;
}

ZeroSet map_zeros_to_disk(ZeroSet zs) {
  for (auto& z : zs.entries) z.w = cayley_to_disk({z.x, 1.0 / z.xi}).value();
  return zs;
}

ZeroSet detect_zeros(const TFMatrix& s, const EdgeGuard& guard, Neighborhood nb) {
  const std::size_t n = s.n_time();
  const std::size_t m_count = s.n_channels();
  if (n < 3 || m_count < 3) throw std::invalid_argument("zero detection needs N, M >= 3");
  std::vector<double> modulus(s.values.size());
  std::transform(s.values.begin(), s.values.end(), modulus.begin(),
                 [](Complex v) { return std::abs(v); });
  ZeroSet zs;
  zs.params = s.params;
  zs.time_grid = s.time_grid;
  zs.freq_grid = s.freq_grid;
  zs.region = guarded_region(s.time_grid, s.freq_grid, s.params, guard);
  for (const auto& [j, m] : grid_minima(modulus, n, m_count, zs.region, nb)) {
    zs.entries.push_back({j, m, s.time_grid.at(j), s.freq_grid.at(m), {}});
  }
  return map_zeros_to_disk(std::move(zs));
}

double expected_zero_count(const ValidRegion& region, const TimeGrid& tg, const LogFreqGrid& fg,
                           double alpha) {
  const double band = std::exp2(0.5 * fg.delta_log2) - std::exp2(-0.5 * fg.delta_log2);
  double total = 0.0;
  for (std::size_t m = region.m_begin; m < region.m_end; ++m) {
    const double extent = static_cast<double>(region.j_end[m] - region.j_begin[m]) * tg.delta_x;
    total += extent * fg.at(m) * band;
  }
  return alpha / (4.0 * std::numbers::pi) * total;
}

std::vector<UpperHalfPoint> region_outline(const ValidRegion& region, const TimeGrid& tg,
                                           const LogFreqGrid& fg) {
  std::vector<std::size_t> active;
  for (std::size_t m = region.m_begin; m < region.m_end; ++m) {
    if (region.j_end[m] > region.j_begin[m]) active.push_back(m);
  }
  if (active.empty()) throw std::invalid_argument("guarded region is empty");
  for (std::size_t k = 1; k < active.size(); ++k) {
    if (active[k] != active[k - 1] + 1) throw std::invalid_argument("guarded region is not connected");
  }
  const double half_step = std::exp2(0.5 * fg.delta_log2);
  auto left = [&](std::size_t m) { return tg.at(region.j_begin[m]) - 0.5 * tg.delta_x; };
  auto right = [&](std::size_t m) { return tg.at(region.j_end[m] - 1) + 0.5 * tg.delta_x; };
  auto lo = [&](std::size_t m) { return fg.at(m) / half_step; };
  auto hi = [&](std::size_t m) { return fg.at(m) * half_step; };

  std::vector<UpperHalfPoint> out;
  auto push = [&](double x, double xi) {
    const UpperHalfPoint p{x, 1.0 / xi};
    if (!out.empty() && out.back().x == p.x && out.back().y == p.y) return;
    out.push_back(p);
  };
  push(left(active.front()), lo(active.front()));
  for (std::size_t m : active) {
    push(right(m), lo(m));
    push(right(m), hi(m));
  }
  for (auto it = active.rbegin(); it != active.rend(); ++it) {
    push(left(*it), hi(*it));
    push(left(*it), lo(*it));
  }
  if (out.size() > 1 && out.back().x == out.front().x && out.back().y == out.front().y) {
    out.pop_back();
  }
  return out;
}

}  // namespace ast
