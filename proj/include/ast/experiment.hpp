#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ast/config.hpp"
#include "ast/spatial_stats.hpp"
#include "ast/transform.hpp"
#include "ast/zeros.hpp"

namespace ast {

inline constexpr const char* kCodeVersion = "0.1.0";

struct ExperimentConfig {
  std::vector<double> alphas{300.0};
  std::size_t n_samples = 4000;
  double fs = 4000.0;
  std::size_t n_channels = 600;
  double xi_min = 0.015625;          // 2^-6
  double xi_max = 9.8491553067593287;  // 2^3.3
  std::size_t realizations = 100;
  std::uint64_t seed = 0;
  double h = 0.01;
  double r_min = 0.01;
  double r_max = 0.6;
  double r_step = 0.005;
  /// Inner-point guard; a negative value means r_max + h/2.
  double r_guard = -1.0;
  std::size_t n_intensity = 40;
  MetricConvention convention = MetricConvention::factor4;
  PairNormalization normalization = PairNormalization::calibrated;
  Neighborhood neighborhood = Neighborhood::eight;
  EdgeGuard guard{};
  double boundary_step = 0.005;
  bool keep_zeros = false;
  std::string out_dir = "results";
  /// 0 selects the hardware concurrency. Never affects results.
  std::size_t workers = 1;

  double effective_r_guard() const { return r_guard < 0.0 ? r_max + 0.5 * h : r_guard; }
  /// Duration covered by the time grid, (N - 1) / fs.
  double duration() const { return static_cast<double>(n_samples - 1) / fs; }
};

/// Applies one key = value setting; throws std::invalid_argument on unknown
/// keys or bad values.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);
ExperimentConfig config_from_settings(const Settings& s, ExperimentConfig base = {});
void validate(const ExperimentConfig& cfg);

/// Every result-affecting key in a fixed order (out_dir and workers are
/// excluded). Feeding this back through config_from_settings reproduces cfg.
Settings canonical_settings(const ExperimentConfig& cfg);
std::uint64_t config_hash(const ExperimentConfig& cfg);

struct AlphaResult {
  double alpha = 0.0;
  std::vector<double> g_mean;
  std::vector<double> g_q05;
  std::vector<double> g_q95;
  std::vector<double> g_theory;
  /// Mean of the uncalibrated printed-form estimate, kept for diagnostics.
  std::vector<double> g_printed_mean;

  Complex intensity_center{0.0, 0.0};
  std::vector<double> r_prime;
  std::vector<double> count_mean;
  std::vector<double> expected_count;

  std::vector<std::uint64_t> seeds;
  std::vector<std::size_t> zero_counts;
  std::vector<std::size_t> inner_counts;
  double expected_zeros = 0.0;
  /// Per-realization zero lists; filled only with keep_zeros.
  std::vector<std::vector<ZeroPoint>> zeros;
};

struct ResultBundle {
  ExperimentConfig config;
  std::uint64_t hash = 0;
  std::vector<double> r_bins;
  std::vector<AlphaResult> results;
};

/// Window of the guarded region mapped to the disk.
ObservationWindow guarded_window(const ValidRegion& region, const TimeGrid& tg,
                                 const LogFreqGrid& fg, double max_step);

/// Disk point of the region (among cell centers on a coarse subgrid) farthest
/// from the window boundary.
Complex deepest_point(const ValidRegion& region, const TimeGrid& tg, const LogFreqGrid& fg,
                      const ObservationWindow& win, std::size_t samples_per_axis = 48);

ResultBundle run_experiment(const ExperimentConfig& cfg);

struct TheoryReport {
  double alpha = 0.0;
  double mad = 0.0;
  double coverage = 0.0;
  std::size_t n_bins = 0;
  double mean_zero_count = 0.0;
  double expected_zero_count = 0.0;
  double zero_count_ratio = 0.0;
};

/// Per alpha: mean absolute deviation of g_mean from theory and the fraction
/// of bins whose [q05, q95] band covers it, over r in [r_lo, r_hi]; and the
/// mean zero count relative to expected_zeros.
std::vector<TheoryReport> compare_to_theory(const ResultBundle& b, double r_lo = 0.05,
                                            double r_hi = 0.5);

/// Nearest-rank quantile: sorted[ceil(p n) - 1], p in (0, 1].
double nearest_rank_quantile(std::vector<double> values, double p);

/// Writes pair_correlation.csv, intensity.csv, zero_counts.csv, report.csv
/// and, with keep_zeros, zeros_a<alpha>_r<index>.csv into dir.
void write_bundle(const ResultBundle& b, const std::string& dir);

}  // namespace ast
