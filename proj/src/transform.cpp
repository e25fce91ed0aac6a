#include "ast/transform.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ast/fft.hpp"

namespace ast {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double LogFreqGrid::at(std::size_t m) const {
  return std::exp2(std::log2(xi_min) + static_cast<double>(m) * delta_log2);
}

TimeGrid make_time_grid(double x_min, double x_max, std::size_t n_samples) {
  if (n_samples < 2) throw std::invalid_argument("time grid needs N >= 2");
  if (!(x_max > x_min)) throw std::invalid_argument("time grid needs x_max > x_min");
  return {x_min, x_max, n_samples, (x_max - x_min) / static_cast<double>(n_samples - 1)};
}

LogFreqGrid make_freq_grid(double xi_min, double xi_max, std::size_t n_channels) {
  if (n_channels < 2) throw std::invalid_argument("frequency grid needs M >= 2");
  if (!(xi_min > 0.0)) throw std::invalid_argument("frequency grid needs xi_min > 0");
  if (!(xi_max > xi_min)) throw std::invalid_argument("frequency grid needs xi_max > xi_min");
  const double step = (std::log2(xi_max) - std::log2(xi_min)) / static_cast<double>(n_channels - 1);
  return {xi_min, xi_max, n_channels, step};
}

std::pair<TimeGrid, LogFreqGrid> make_grids(double x_min, double x_max, std::size_t n_samples,
                                            double xi_min, double xi_max, std::size_t n_channels) {
  return {make_time_grid(x_min, x_max, n_samples), make_freq_grid(xi_min, xi_max, n_channels)};
}

TimeGrid make_centered_time_grid(std::size_t n_samples, double fs) {
  if (!(fs > 0.0)) throw std::invalid_argument("sampling frequency must be > 0");
  if (n_samples < 2) throw std::invalid_argument("time grid needs N >= 2");
  const double half = 0.5 * static_cast<double>(n_samples - 1) / fs;
  TimeGrid g = make_time_grid(-half, half, n_samples);
  g.delta_x = 1.0 / fs;
  return g;
}

DiscreteSignal sample_white_noise(const TimeGrid& grid, std::uint64_t seed, NoiseKind kind) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  DiscreteSignal s{std::vector<Complex>(grid.n_samples), grid};
  const double sd = kind == NoiseKind::complex ? std::sqrt(0.5) : 1.0;
  for (auto& v : s.samples) {
    const double re = sd * normal(rng);
    const double im = kind == NoiseKind::complex ? sd * normal(rng) : 0.0;
    v = {re, im};
  }
  return s;
}

const char* to_string(PhaseConvention c) {
  return c == PhaseConvention::physical ? "physical" : "literal";
}

PhaseConvention parse_phase_convention(const char* name) {
  const std::string_view s(name);
  if (s == "physical") return PhaseConvention::physical;
  if (s == "literal") return PhaseConvention::literal;
  throw std::invalid_argument("unknown phase convention '" + std::string(s) + "'");
}

double transform_log_scale(WindowParams p) {
  const double b = p.beta();
  return b * (std::log(b / kTwoPi) - 1.0);
}

Complex conj_modulated_window(double t, WindowParams p, double log_shift) {
  const double b1 = p.beta() + 1.0;
  const double log_mag =
      std::lgamma(b1) - b1 * (std::log(kTwoPi) + 0.5 * std::log1p(t * t)) - log_shift;
  const double phase = -b1 * std::atan(t) + kTwoPi * t;
  return std::exp(Complex(log_mag, phase));
}

namespace {

void check_signal(const DiscreteSignal& y) {
  if (y.samples.size() != y.grid.n_samples) {
    throw std::invalid_argument("signal length does not match its time grid");
  }
  if (y.grid.n_samples < 2) throw std::invalid_argument("signal needs N >= 2");
}

TFMatrix empty_matrix(const DiscreteSignal& y, const LogFreqGrid& fg, WindowParams p,
                      PhaseConvention c) {
  TFMatrix s;
  s.time_grid = y.grid;
  s.freq_grid = fg;
  s.params = p;
  s.convention = c;
  s.log_scale = transform_log_scale(p);
  s.values.assign(y.grid.n_samples * fg.n_channels, Complex(0.0, 0.0));
  return s;
}

}  // namespace

TFMatrix dast_direct(const DiscreteSignal& y, const LogFreqGrid& fg, WindowParams p,
                     PhaseConvention convention) {
  check_signal(y);
  TFMatrix s = empty_matrix(y, fg, p, convention);
  const std::size_t n = y.grid.n_samples;
  const double dx = y.grid.delta_x;

  std::vector<Complex> kernel(2 * n - 1);
  std::vector<Complex> modulated(n);
  for (std::size_t m = 0; m < fg.n_channels; ++m) {
    const double xi = fg.at(m);
    const bool physical = convention == PhaseConvention::physical;
    const double weight_log = physical ? std::log(xi * dx) : 0.0;
    const double shift = s.log_scale - weight_log;
    // kernel[d + n - 1] = conj(phi(xi (x_n - x_j))) with d = n - j
    for (std::size_t k = 0; k < kernel.size(); ++k) {
      const double d = static_cast<double>(k) - static_cast<double>(n - 1);
      kernel[k] = conj_modulated_window(xi * d * dx, p, shift);
    }
    const double freq = physical ? kTwoPi * xi : kTwoPi * xi / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      modulated[i] = y.samples[i] * std::polar(1.0, -freq * y.grid.at(i));
    }
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc(0.0, 0.0);
      const Complex* kj = kernel.data() + (n - 1 - j);
      for (std::size_t i = 0; i < n; ++i) acc += modulated[i] * kj[i];
      s(j, m) = acc;
    }
  }
  return s;
}

double envelope_halfwidth(WindowParams p, double level) {
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("envelope level must be in (0,1)");
  return std::sqrt(std::expm1(-2.0 * std::log(level) / (p.beta() + 1.0)));
}

std::size_t spectral_padded_length(const TimeGrid& tg, const LogFreqGrid& fg, WindowParams p,
                                   const SpectralOptions& options) {
  const double n = static_cast<double>(tg.n_samples);
  const double tail = envelope_halfwidth(p, options.tail_tolerance) / (fg.xi_min * tg.delta_x);
  const double pad = std::min(std::ceil(tail), std::ceil(options.max_pad_factor * n));
  return fft::next_pow2(tg.n_samples + static_cast<std::size_t>(std::max(pad, 0.0)));
}

TFMatrix dast_spectral(const DiscreteSignal& y, const LogFreqGrid& fg, WindowParams p,
                       const SpectralOptions& options) {
  check_signal(y);
  TFMatrix s = empty_matrix(y, fg, p, PhaseConvention::physical);
  const std::size_t n = y.grid.n_samples;
  const std::size_t len = spectral_padded_length(y.grid, fg, p, options);
  const double bin = 1.0 / (static_cast<double>(len) * y.grid.delta_x);
  const double beta = p.beta();

  std::vector<Complex> spectrum(len, Complex(0.0, 0.0));
  std::copy(y.samples.begin(), y.samples.end(), spectrum.begin());
  fft::forward(spectrum);

  std::vector<Complex> work(len);
  const double inv_len = 1.0 / static_cast<double>(len);
  for (std::size_t m = 0; m < fg.n_channels; ++m) {
    const double xi = fg.at(m);
    std::fill(work.begin(), work.end(), Complex(0.0, 0.0));
    // DC, Nyquist and negative bins stay zero.
    for (std::size_t q = 1; q < len / 2; ++q) {
      const double u = static_cast<double>(q) * bin / xi;
      const double log_h = beta * std::log(u) - kTwoPi * u - s.log_scale;
      if (log_h < -745.0) continue;
      work[q] = spectrum[q] * std::exp(log_h);
    }
    fft::backward(work);
    for (std::size_t j = 0; j < n; ++j) {
      s(j, m) = work[j] * inv_len * std::polar(1.0, -kTwoPi * xi * y.grid.at(j));
    }
  }
  return s;
}

std::vector<std::size_t> time_guard_columns(const TimeGrid& tg, const LogFreqGrid& fg,
                                            WindowParams p, double envelope_level) {
  const double s = envelope_halfwidth(p, envelope_level);
  std::vector<std::size_t> cols(fg.n_channels);
  for (std::size_t m = 0; m < fg.n_channels; ++m) {
    const double c = std::ceil(s / (fg.at(m) * tg.delta_x));
    cols[m] = c >= static_cast<double>(tg.n_samples) ? tg.n_samples : static_cast<std::size_t>(c);
  }
  return cols;
}

Complex AnalyticGrid::disk_point(std::size_t j, std::size_t m) const {
  return cayley_to_disk({time_grid.at(j), 1.0 / freq_grid.at(m)}).value();
}

AnalyticGrid extract_analytic_part(const TFMatrix& s) {
  AnalyticGrid f;
  f.time_grid = s.time_grid;
  f.freq_grid = s.freq_grid;
  f.params = s.params;
  f.values.resize(s.values.size());
  f.channel_log_scale.resize(s.n_channels());
  const std::size_t n = s.n_time();
  for (std::size_t m = 0; m < s.n_channels(); ++m) {
    const double xi = s.freq_grid.at(m);
    // 1/lambda = xi^beta e^{2 pi i xi x}; the modulus goes into the scale.
    f.channel_log_scale[m] = s.log_scale + s.params.beta() * std::log(xi);
    for (std::size_t j = 0; j < n; ++j) {
      f.values[m * n + j] = s(j, m) * std::polar(1.0, kTwoPi * xi * s.time_grid.at(j));
    }
  }
  return f;
}

CauchyRiemannFit cauchy_riemann_fit(const AnalyticGrid& f, std::size_t j, std::size_t m) {
  const std::size_t n = f.time_grid.n_samples;
  if (j == 0 || m == 0 || j + 1 >= n || m + 1 >= f.freq_grid.n_channels) {
    throw std::out_of_range("cauchy_riemann_fit needs an interior cell");
  }
  const double order = 2.0 * f.params.beta() + 1.0;
  const Complex w0 = f.disk_point(j, m);
  Eigen::Matrix<std::complex<double>, 9, 6> design;
  Eigen::Matrix<std::complex<double>, 9, 1> rhs;
  std::array<Complex, 9> delta{};
  double span = 0.0;
  int k = 0;
  for (int dm = -1; dm <= 1; ++dm) {
    for (int dj = -1; dj <= 1; ++dj, ++k) {
      const std::size_t jj = j + dj;
      const std::size_t mm = m + dm;
      const Complex w = f.disk_point(jj, mm);
      delta[k] = w - w0;
      span = std::max(span, std::abs(delta[k]));
      // L(w) K(w0) = F(w) K(w0) / K(w), scaled to channel m.
      const Complex log_k_ratio = order * (std::log((1.0 - w) / (1.0 - w0)) -
                                           std::log((1.0 - std::conj(w0) * w) / (1.0 - std::norm(w0))));
      rhs(k) = f(jj, mm) * std::exp(f.channel_log_scale[mm] - f.channel_log_scale[m] - log_k_ratio);
    }
  }
  for (k = 0; k < 9; ++k) {
    const Complex d = delta[k] / span;
    design(k, 0) = 1.0;
    design(k, 1) = d;
    design(k, 2) = std::conj(d);
    design(k, 3) = d * d;
    design(k, 4) = d * std::conj(d);
    design(k, 5) = std::conj(d * d);
  }
  const Eigen::Matrix<std::complex<double>, 6, 1> coef = design.colPivHouseholderQr().solve(rhs);
  // K'/K at w0, with alpha = 2 beta + 1.
  const Complex dlog_k = -order / (1.0 - w0) + order * std::conj(w0) / (1.0 - std::norm(w0));
  return {std::abs(coef(2)) / span, std::abs(coef(1) / span + coef(0) * dlog_k)};
}

CauchyRiemannSummary cauchy_riemann_summary(
    const AnalyticGrid& f, const std::vector<std::pair<std::size_t, std::size_t>>& cells) {
  std::vector<double> ratios;
  ratios.reserve(cells.size());
  for (const auto& [j, m] : cells) {
    const auto fit = cauchy_riemann_fit(f, j, m);
    if (fit.gradient > 0.0) ratios.push_back(fit.residual / fit.gradient);
  }
  if (ratios.empty()) return {};
  auto mid = ratios.begin() + static_cast<std::ptrdiff_t>(ratios.size() / 2);
  std::nth_element(ratios.begin(), mid, ratios.end());
  return {*mid, ratios.size()};
}

}  // namespace ast
