#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "ast/analytic_window.hpp"
#include "ast/geometry.hpp"

namespace ast {

/// Uniform time samples x_n = x_min + n delta_x, n = 0..N-1.
struct TimeGrid {
  double x_min = 0.0;
  double x_max = 1.0;
  std::size_t n_samples = 2;
  double delta_x = 1.0;

  double at(std::size_t n) const { return x_min + static_cast<double>(n) * delta_x; }
};

/// Logarithmically spaced channels xi_m = 2^(log2 xi_min + m delta_log2).
struct LogFreqGrid {
  double xi_min = 1.0;
  double xi_max = 2.0;
  std::size_t n_channels = 2;
  double delta_log2 = 1.0;

  double at(std::size_t m) const;
};

TimeGrid make_time_grid(double x_min, double x_max, std::size_t n_samples);
LogFreqGrid make_freq_grid(double xi_min, double xi_max, std::size_t n_channels);
std::pair<TimeGrid, LogFreqGrid> make_grids(double x_min, double x_max, std::size_t n_samples,
                                            double xi_min, double xi_max, std::size_t n_channels);

/// N samples at sampling frequency fs, centered on t = 0.
TimeGrid make_centered_time_grid(std::size_t n_samples, double fs);

struct DiscreteSignal {
  std::vector<Complex> samples;
  TimeGrid grid;
};

enum class NoiseKind { real, complex };

/// i.i.d. N(0,1) samples; the complex kind splits unit variance evenly over
/// the real and imaginary parts. Deterministic in `seed`.
DiscreteSignal sample_white_noise(const TimeGrid& grid, std::uint64_t seed,
                                  NoiseKind kind = NoiseKind::complex);

/// Exponent used for the modulation term of the discrete sum.
///
/// `physical` is the Riemann sum of the continuous transform,
///   xi delta_x sum_n y_n conj(phi(xi (x_n - x_j))) e^{-2 pi i xi x_n}.
/// `literal` drops the xi delta_x weight and uses e^{-i (2 pi / N) xi x_n}.
enum class PhaseConvention { physical, literal };

const char* to_string(PhaseConvention c);
PhaseConvention parse_phase_convention(const char* name);

/// Transform values on the N x M grid. Stored values are scaled by a global
/// factor: the transform equals values * exp(log_scale), which keeps large
/// window orders representable.
struct TFMatrix {
  TimeGrid time_grid;
  LogFreqGrid freq_grid;
  WindowParams params = WindowParams::from_beta(1.0);
  PhaseConvention convention = PhaseConvention::physical;
  double log_scale = 0.0;
  std::vector<Complex> values;  // channel-major: values[m * N + j]

  std::size_t n_time() const { return time_grid.n_samples; }
  std::size_t n_channels() const { return freq_grid.n_channels; }
  Complex operator()(std::size_t j, std::size_t m) const { return values[m * n_time() + j]; }
  Complex& operator()(std::size_t j, std::size_t m) { return values[m * n_time() + j]; }
};

/// Global log scale applied to every transform with these window params:
/// the peak of log((nu/xi)^beta e^{-2 pi nu / xi}).
double transform_log_scale(WindowParams p);

/// Conjugated modulated window conj(phi_beta(t)) with
/// phi_beta(t) = psi_beta(t) e^{-2 pi i t} and
/// psi_beta(t) = Gamma(beta + 1) / (2 pi (1 - i t))^{beta + 1}, multiplied by
/// exp(-log_shift).
Complex conj_modulated_window(double t, WindowParams p, double log_shift = 0.0);

/// Reference evaluator: the O(N^2 M) discrete sum.
TFMatrix dast_direct(const DiscreteSignal& y, const LogFreqGrid& fg, WindowParams p,
                     PhaseConvention convention = PhaseConvention::physical);

struct SpectralOptions {
  /// Envelope level below which the window tail is treated as zero when
  /// sizing the zero padding.
  double tail_tolerance = 1e-12;
  /// Upper bound on the padding, in multiples of N.
  double max_pad_factor = 2.0;
};

/// Fourier-multiplier evaluator: per channel, multiply the positive DFT bins
/// by (nu/xi)^beta e^{-2 pi nu / xi}, invert, and apply e^{-2 pi i xi x_j}.
/// The signal is zero padded so the circular convolution matches the direct
/// sum up to the window tail. Matches dast_direct in the physical convention.
TFMatrix dast_spectral(const DiscreteSignal& y, const LogFreqGrid& fg, WindowParams p,
                       const SpectralOptions& options = {});

/// Padded DFT length used by dast_spectral.
std::size_t spectral_padded_length(const TimeGrid& tg, const LogFreqGrid& fg, WindowParams p,
                                   const SpectralOptions& options = {});

/// Half-width s (in units of 1/xi) where the window envelope
/// (1 + s^2)^{-(beta+1)/2} falls to `level` of its peak.
double envelope_halfwidth(WindowParams p, double level);

/// Number of columns at each time edge of channel m whose window reaches
/// past the signal at the given envelope level.
std::vector<std::size_t> time_guard_columns(const TimeGrid& tg, const LogFreqGrid& fg,
                                            WindowParams p, double envelope_level = 1e-4);

/// F = S / lambda sampled on the grid, with a per-channel log scale:
/// F(theta(x_j + i/xi_m)) = values[m * N + j] * exp(channel_log_scale[m]).
///
/// F = H G with H(w) = ((1 - w)/2)^{2 beta + 1}, the holomorphic factor of
/// eta in disk coordinates, and G = S / eta.
struct AnalyticGrid {
  TimeGrid time_grid;
  LogFreqGrid freq_grid;
  WindowParams params = WindowParams::from_beta(1.0);
  std::vector<Complex> values;
  std::vector<double> channel_log_scale;

  Complex operator()(std::size_t j, std::size_t m) const {
    return values[m * time_grid.n_samples + j];
  }
  Complex disk_point(std::size_t j, std::size_t m) const;
};

AnalyticGrid extract_analytic_part(const TFMatrix& s);

/// Discrete Wirtinger derivatives of F at grid cell (j, m), in disk
/// coordinates, in units of the channel-m scale.
///
/// At the grid resolutions of interest F changes by a large factor from one
/// cell to the next (its growth is set by alpha and the hyperbolic cell
/// size), so a local polynomial fit of F itself is dominated by truncation
/// error. F is therefore written as K L with the closed-form holomorphic
/// factor K(w) = H(w) (1 - conj(w0) w)^{-alpha}, which absorbs that growth
/// around the cell center w0, and L = F / K is fitted on the 3 x 3 stencil
/// by a full quadratic in d = w - w0 and conj(d),
///   L(w) ~ c + a d + b conj(d) + q1 d^2 + q2 |d|^2 + q3 conj(d)^2.
/// The product rule then gives
///   dF/dconj(w) = K b,   dF/dw = K (a + c K'/K).
/// `residual` is |dF/dconj(w)| and `gradient` |dF/dw|.
struct CauchyRiemannFit {
  double residual = 0.0;
  double gradient = 0.0;
};

CauchyRiemannFit cauchy_riemann_fit(const AnalyticGrid& f, std::size_t j, std::size_t m);

struct CauchyRiemannSummary {
  double median_ratio = 0.0;
  std::size_t n_cells = 0;
};

/// Median over the given interior cells of residual / gradient.
CauchyRiemannSummary cauchy_riemann_summary(
    const AnalyticGrid& f, const std::vector<std::pair<std::size_t, std::size_t>>& cells);

}  // namespace ast
