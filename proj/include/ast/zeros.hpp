#pragma once

#include <cstddef>
#include <vector>

#include "ast/geometry.hpp"
#include "ast/transform.hpp"

namespace ast {

/// Cells excluded from zero detection.
struct EdgeGuard {
  /// Cells dropped at every grid edge (at least 1: a border cell has no full
  /// 3 x 3 neighborhood).
  std::size_t border = 1;
  /// Extra channels dropped at the lowest and highest frequencies.
  std::size_t channel_guard = 2;
  /// Envelope level for the per-channel time margin; see time_guard_columns.
  double envelope_level = 1e-4;
  bool time_margin = true;
  /// Channels whose multiplier (nu/xi)^beta e^{-2 pi nu/xi} at the Nyquist
  /// frequency exceeds this fraction of its peak are dropped: their passband
  /// is cut off by the sampling.
  double nyquist_level = 1e-4;
};

/// Multiplier at the Nyquist frequency relative to its peak, as a log. Zero
/// when the peak itself lies at or above Nyquist.
double log_nyquist_leakage(const TimeGrid& tg, double xi, WindowParams p);

enum class Neighborhood { eight, four };

/// Per-channel half-open column ranges [j_begin[m], j_end[m]) for channels
/// m in [m_begin, m_end). Channels outside that range, or with an empty
/// column range, hold no valid cell.
struct ValidRegion {
  std::size_t m_begin = 0;
  std::size_t m_end = 0;
  std::vector<std::size_t> j_begin;
  std::vector<std::size_t> j_end;

  bool contains(std::size_t j, std::size_t m) const {
    return m >= m_begin && m < m_end && j >= j_begin[m] && j < j_end[m];
  }
  std::size_t n_cells() const;
};

ValidRegion guarded_region(const TimeGrid& tg, const LogFreqGrid& fg, WindowParams p,
                           const EdgeGuard& guard = {});

struct ZeroPoint {
  std::size_t j = 0;
  std::size_t m = 0;
  double x = 0.0;
  double xi = 0.0;
  Complex w{0.0, 0.0};
};

struct ZeroSet {
  std::vector<ZeroPoint> entries;  // ordered by (m, j)
  WindowParams params = WindowParams::from_beta(1.0);
  TimeGrid time_grid;
  LogFreqGrid freq_grid;
  ValidRegion region;

  std::vector<Complex> disk_points() const;
};

/// Minimal-grid-neighbor detection: (j, m) is a zero iff |S(j, m)| is
/// strictly below |S| at every neighbor. Disk coordinates are filled in.
ZeroSet detect_zeros(const TFMatrix& s, const EdgeGuard& guard = {},
                     Neighborhood nb = Neighborhood::eight);

/// Same rule on a bare modulus array (channel-major, n_time x n_channels).
std::vector<std::pair<std::size_t, std::size_t>> grid_minima(const std::vector<double>& modulus,
                                                             std::size_t n_time,
                                                             std::size_t n_channels,
                                                             const ValidRegion& region,
                                                             Neighborhood nb);

/// Sets w = cayley_to_disk(x + i/xi) on every entry.
ZeroSet map_zeros_to_disk(ZeroSet zs);

/// Expected number of zeros of the white-noise transform over the region:
/// the intensity alpha/(4 pi) per unit of (x, xi), integrated over the cells
/// (each cell spans delta_x in time and one log2 step in frequency).
double expected_zero_count(const ValidRegion& region, const TimeGrid& tg, const LogFreqGrid& fg,
                           double alpha);

/// Boundary of the union of valid cells as a closed staircase polygon in the
/// upper half-plane (y = 1/xi), counterclockwise in (x, xi).
std::vector<UpperHalfPoint> region_outline(const ValidRegion& region, const TimeGrid& tg,
                                           const LogFreqGrid& fg);

}  // namespace ast
