#include "ast/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "ast/gaf.hpp"
#include "ast/random.hpp"
#include "ast/signal_io.hpp"

namespace ast {

namespace {

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("config key '" + key + "': bad number '" + v + "'");
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    if (!v.empty() && v.front() != '-') {
      const unsigned long long u = std::stoull(v, &used, 0);
      if (used == v.size()) return u;
    }
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("config key '" + key + "': bad non-negative integer '" + v + "'");
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("config key '" + key + "': bad boolean '" + v + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= v.size()) {
    auto comma = v.find(',', pos);
    if (comma == std::string::npos) comma = v.size();
    std::string item = v.substr(pos, comma - pos);
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    out.push_back(parse_double(key, item));
    pos = comma + 1;
  }
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + format_double(v[k]);
  return s;
}

std::string alpha_tag(double a) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", a);
  return buf;
}

template <class Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(body);
    for (auto& t : pool) t.join();
  }
  // Report the lowest failing index, whatever the schedule.
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct Realization {
  std::vector<double> g;
  std::vector<double> g_printed;
  std::vector<double> counts;
  std::size_t n_zeros = 0;
  std::size_t n_inner = 0;
  std::vector<ZeroPoint> zeros;
};

Settings provenance(const ResultBundle& b) {
  Settings s = {{"config_hash", hex64(b.hash)}, {"code_version", kCodeVersion}};
  for (auto& kv : canonical_settings(b.config)) s.push_back(kv);
  return s;
}

std::ofstream open_table(const std::filesystem::path& p, const Settings& header) {
  std::ofstream out(p);
  if (!out) throw std::invalid_argument("cannot write '" + p.string() + "'");
  for (const auto& [k, v] : header) out << "# " << k << " = " << v << '\n';
  return out;
}

}  // namespace

void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "alpha") {
    cfg.alphas = parse_list(key, value);
  } else if (key == "n_samples") {
    cfg.n_samples = parse_uint(key, value);
  } else if (key == "fs") {
    cfg.fs = parse_double(key, value);
  } else if (key == "channels" || key == "n_channels") {
    cfg.n_channels = parse_uint(key, value);
  } else if (key == "xi_min") {
    cfg.xi_min = parse_double(key, value);
  } else if (key == "xi_max") {
    cfg.xi_max = parse_double(key, value);
  } else if (key == "realizations") {
    cfg.realizations = parse_uint(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_uint(key, value);
  } else if (key == "h") {
    cfg.h = parse_double(key, value);
  } else if (key == "r_min") {
    cfg.r_min = parse_double(key, value);
  } else if (key == "r_max") {
    cfg.r_max = parse_double(key, value);
  } else if (key == "r_step") {
    cfg.r_step = parse_double(key, value);
  } else if (key == "r_guard") {
    cfg.r_guard = value == "auto" ? -1.0 : parse_double(key, value);
  } else if (key == "n_intensity") {
    cfg.n_intensity = parse_uint(key, value);
  } else if (key == "convention") {
    cfg.convention = parse_metric_convention(value.c_str());
  } else if (key == "normalization") {
    if (value == "calibrated") {
      cfg.normalization = PairNormalization::calibrated;
    } else if (value == "printed") {
      cfg.normalization = PairNormalization::printed;
    } else {
      throw std::invalid_argument("config key 'normalization': expected calibrated or printed");
    }
  } else if (key == "neighborhood") {
    if (value == "8" || value == "eight") {
      cfg.neighborhood = Neighborhood::eight;
    } else if (value == "4" || value == "four") {
      cfg.neighborhood = Neighborhood::four;
    } else {
      throw std::invalid_argument("config key 'neighborhood': expected 8 or 4");
    }
  } else if (key == "border") {
    cfg.guard.border = parse_uint(key, value);
  } else if (key == "channel_guard") {
    cfg.guard.channel_guard = parse_uint(key, value);
  } else if (key == "envelope_level") {
    cfg.guard.envelope_level = parse_double(key, value);
  } else if (key == "nyquist_level") {
    cfg.guard.nyquist_level = parse_double(key, value);
  } else if (key == "time_margin") {
    cfg.guard.time_margin = parse_bool(key, value);
  } else if (key == "boundary_step") {
    cfg.boundary_step = parse_double(key, value);
  } else if (key == "keep_zeros") {
    cfg.keep_zeros = parse_bool(key, value);
  } else if (key == "out" || key == "out_dir") {
    cfg.out_dir = value;
  } else if (key == "workers") {
    cfg.workers = parse_uint(key, value);
  } else if (key == "duration") {
    throw std::invalid_argument("config key 'duration': the duration is (n_samples - 1) / fs; set those instead");
  } else {
    throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

ExperimentConfig config_from_settings(const Settings& s, ExperimentConfig base) {
  for (const auto& [k, v] : s) apply_setting(base, k, v);
  return base;
}

void validate(const ExperimentConfig& c) {
  auto fail = [](const std::string& m) { throw std::invalid_argument("invalid config: " + m); };
  if (c.alphas.empty()) fail("no alpha");
  for (double a : c.alphas) {
    if (!(a > 1.0)) fail("alpha must be > 1 (beta = (alpha - 1)/2 > 0)");
  }
  if (c.n_samples < 3) fail("n_samples must be >= 3");
  if (!(c.fs > 0.0)) fail("fs must be > 0");
  if (c.n_channels < 3) fail("channels must be >= 3");
  if (!(c.xi_min > 0.0 && c.xi_max > c.xi_min)) fail("need 0 < xi_min < xi_max");
  if (c.realizations < 1) fail("realizations must be >= 1");
  if (!(c.h > 0.0 && c.h < 1.0)) fail("h must be in (0, 1)");
  if (!(c.r_step > 0.0)) fail("r_step must be > 0");
  if (!(c.r_min > 0.5 * c.h && c.r_max >= c.r_min && c.r_max < 1.0 - 0.5 * c.h)) {
    fail("need h/2 < r_min <= r_max < 1 - h/2");
  }
  const double g = c.effective_r_guard();
  if (!(g > 0.0 && g < 1.0)) fail("r_guard must be in (0, 1)");
  if (c.n_intensity < 1) fail("n_intensity must be >= 1");
  if (!(c.guard.envelope_level > 0.0 && c.guard.envelope_level < 1.0)) {
    fail("envelope_level must be in (0, 1)");
  }
  if (!(c.guard.nyquist_level > 0.0 && c.guard.nyquist_level < 1.0)) {
    fail("nyquist_level must be in (0, 1)");
  }
  if (!(c.boundary_step > 0.0 && c.boundary_step < 0.5)) fail("boundary_step must be in (0, 0.5)");
}

Settings canonical_settings(const ExperimentConfig& c) {
  return {
      {"alpha", join(c.alphas)},
      {"n_samples", std::to_string(c.n_samples)},
      {"fs", format_double(c.fs)},
      {"channels", std::to_string(c.n_channels)},
      {"xi_min", format_double(c.xi_min)},
      {"xi_max", format_double(c.xi_max)},
      {"realizations", std::to_string(c.realizations)},
      {"seed", std::to_string(c.seed)},
      {"h", format_double(c.h)},
      {"r_min", format_double(c.r_min)},
      {"r_max", format_double(c.r_max)},
      {"r_step", format_double(c.r_step)},
      {"r_guard", format_double(c.effective_r_guard())},
      {"n_intensity", std::to_string(c.n_intensity)},
      {"convention", to_string(c.convention)},
      {"normalization", to_string(c.normalization)},
      {"neighborhood", c.neighborhood == Neighborhood::eight ? "8" : "4"},
      {"border", std::to_string(c.guard.border)},
      {"channel_guard", std::to_string(c.guard.channel_guard)},
      {"envelope_level", format_double(c.guard.envelope_level)},
      {"time_margin", c.guard.time_margin ? "true" : "false"},
      {"nyquist_level", format_double(c.guard.nyquist_level)},
      {"boundary_step", format_double(c.boundary_step)},
      {"keep_zeros", c.keep_zeros ? "true" : "false"},
  };
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  std::string text;
  for (const auto& [k, v] : canonical_settings(cfg)) text += k + "=" + v + "\n";
  return fnv1a64(text);
}

ObservationWindow guarded_window(const ValidRegion& region, const TimeGrid& tg,
                                 const LogFreqGrid& fg, double max_step) {
  return ObservationWindow::from_halfplane_polygon(region_outline(region, tg, fg), max_step);
}

Complex deepest_point(const ValidRegion& region, const TimeGrid& tg, const LogFreqGrid& fg,
                      const ObservationWindow& win, std::size_t samples_per_axis) {
  if (region.n_cells() == 0) throw std::invalid_argument("guarded region is empty");
  const std::size_t k = std::max<std::size_t>(samples_per_axis, 2);
  Complex best(0.0, 0.0);
  double best_d = -1.0;
  const std::size_t m_span = region.m_end - region.m_begin;
  for (std::size_t a = 0; a < k; ++a) {
    const std::size_t m = region.m_begin + (m_span - 1) * a / (k - 1);
    const std::size_t jb = region.j_begin[m];
    const std::size_t je = region.j_end[m];
    if (je <= jb) continue;
    for (std::size_t b = 0; b < k; ++b) {
      const std::size_t j = jb + (je - jb - 1) * b / (k - 1);
      const Complex w = cayley_to_disk({tg.at(j), 1.0 / fg.at(m)}).value();
      if (!win.contains(w)) continue;
      const double d = win.distance_to_boundary(w);
      if (d > best_d) {
        best_d = d;
        best = w;
      }
    }
  }
  if (best_d < 0.0) throw std::invalid_argument("no cell center inside the window");
  return best;
}

double nearest_rank_quantile(std::vector<double> values, double p) {
  if (values.empty()) throw std::invalid_argument("quantile of an empty sample");
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("quantile level must be in (0, 1]");
  std::sort(values.begin(), values.end());
  const auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(values.size())));
  return values[std::max<std::size_t>(rank, 1) - 1];
}

ResultBundle run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  ResultBundle bundle;
  bundle.config = cfg;
  bundle.hash = config_hash(cfg);
  bundle.r_bins = make_r_bins(cfg.r_min, cfg.r_max, cfg.r_step);
  const auto& bins = bundle.r_bins;

  const TimeGrid tg = make_centered_time_grid(cfg.n_samples, cfg.fs);
  const LogFreqGrid fg = make_freq_grid(cfg.xi_min, cfg.xi_max, cfg.n_channels);
  const double r_guard = cfg.effective_r_guard();
  const std::size_t n_real = cfg.realizations;

  for (const double alpha : cfg.alphas) {
    const WindowParams p = WindowParams::from_alpha(alpha);
    const ValidRegion region = guarded_region(tg, fg, p, cfg.guard);
    if (region.n_cells() == 0) {
      throw std::invalid_argument("guarded region is empty for alpha " + alpha_tag(alpha));
    }
    const ObservationWindow win = guarded_window(region, tg, fg, cfg.boundary_step);

    AlphaResult res;
    res.alpha = alpha;
    res.expected_zeros = expected_zero_count(region, tg, fg, alpha);
    res.intensity_center = deepest_point(region, tg, fg, win);
    const double r_prime_max = pseudo_to_hyperbolic(win.distance_to_boundary(res.intensity_center));
    for (std::size_t k = 1; k <= cfg.n_intensity; ++k) {
      const double rp = r_prime_max * static_cast<double>(k) / static_cast<double>(cfg.n_intensity);
      res.r_prime.push_back(rp);
      res.expected_count.push_back(alpha * std::pow(std::sinh(0.5 * rp), 2));
    }

    std::vector<Realization> reps(n_real);
    res.seeds.resize(n_real);
    for (std::size_t r = 0; r < n_real; ++r) res.seeds[r] = derive_seed(cfg.seed, r);

    parallel_for(n_real, cfg.workers, [&](std::size_t r) {
      try {
        const DiscreteSignal y = sample_white_noise(tg, res.seeds[r]);
        const TFMatrix s = dast_spectral(y, fg, p);
        ZeroSet zs = detect_zeros(s, cfg.guard, cfg.neighborhood);
        const std::vector<Complex> pts = zs.disk_points();
        const auto mask = classify_inner(pts, win, r_guard);
        const RadialStats st =
            estimate_pair_correlation(pts, mask, bins, cfg.h, alpha, PairNormalization::calibrated);
        Realization& out = reps[r];
        out.g_printed.resize(bins.size());
        for (std::size_t k = 0; k < bins.size(); ++k) {
          out.g_printed[k] = st.g[k] * static_cast<double>(st.n_centers) / 2.0;
        }
        out.g = cfg.normalization == PairNormalization::calibrated ? st.g : out.g_printed;
        for (double rp : res.r_prime) {
          out.counts.push_back(static_cast<double>(count_within(pts, res.intensity_center, rp)));
        }
        out.n_zeros = pts.size();
        out.n_inner = st.n_centers;
        if (cfg.keep_zeros) out.zeros = std::move(zs.entries);
      } catch (const std::exception& e) {
        throw std::runtime_error("realization " + std::to_string(r) + " (seed " +
                                 std::to_string(res.seeds[r]) + ", alpha " + alpha_tag(alpha) +
                                 ") failed: " + e.what());
      }
    });

    const double inv = 1.0 / static_cast<double>(n_real);
    res.g_mean.assign(bins.size(), 0.0);
    res.g_printed_mean.assign(bins.size(), 0.0);
    res.count_mean.assign(res.r_prime.size(), 0.0);
    for (const auto& rep : reps) {
      for (std::size_t k = 0; k < bins.size(); ++k) {
        res.g_mean[k] += rep.g[k] * inv;
        res.g_printed_mean[k] += rep.g_printed[k] * inv;
      }
      for (std::size_t k = 0; k < res.r_prime.size(); ++k) res.count_mean[k] += rep.counts[k] * inv;
      res.zero_counts.push_back(rep.n_zeros);
      res.inner_counts.push_back(rep.n_inner);
      if (cfg.keep_zeros) res.zeros.push_back(rep.zeros);
    }
    std::vector<double> column(n_real);
    for (std::size_t k = 0; k < bins.size(); ++k) {
      for (std::size_t r = 0; r < n_real; ++r) column[r] = reps[r].g[k];
      res.g_q05.push_back(nearest_rank_quantile(column, 0.05));
      res.g_q95.push_back(nearest_rank_quantile(column, 0.95));
      res.g_theory.push_back(theoretical_pair_correlation(alpha, bins[k]));
    }
    bundle.results.push_back(std::move(res));
  }
  return bundle;
}

std::vector<TheoryReport> compare_to_theory(const ResultBundle& b, double r_lo, double r_hi) {
  std::vector<TheoryReport> out;
  for (const auto& res : b.results) {
    TheoryReport t;
    t.alpha = res.alpha;
    std::size_t covered = 0;
    for (std::size_t k = 0; k < b.r_bins.size(); ++k) {
      const double r = b.r_bins[k];
      if (r < r_lo - 1e-12 || r > r_hi + 1e-12) continue;
      ++t.n_bins;
      t.mad += std::abs(res.g_mean[k] - res.g_theory[k]);
      covered += res.g_q05[k] <= res.g_theory[k] && res.g_theory[k] <= res.g_q95[k];
    }
    if (t.n_bins > 0) {
      t.mad /= static_cast<double>(t.n_bins);
      t.coverage = static_cast<double>(covered) / static_cast<double>(t.n_bins);
    }
    for (std::size_t n : res.zero_counts) t.mean_zero_count += static_cast<double>(n);
    if (!res.zero_counts.empty()) t.mean_zero_count /= static_cast<double>(res.zero_counts.size());
    t.expected_zero_count = res.expected_zeros;
    t.zero_count_ratio = res.expected_zeros > 0.0 ? t.mean_zero_count / res.expected_zeros : 0.0;
    out.push_back(t);
  }
  return out;
}

void write_bundle(const ResultBundle& b, const std::string& dir) {
  namespace fs = std::filesystem;
  const fs::path root(dir);
  fs::create_directories(root);
  const Settings header = provenance(b);
  const auto& cfg = b.config;

  {
    auto out = open_table(root / "pair_correlation.csv", header);
    out << "alpha,r,g_mean,g_q05,g_q95,g_theory,g_printed_mean\n";
    for (const auto& res : b.results) {
      for (std::size_t k = 0; k < b.r_bins.size(); ++k) {
        out << format_double(res.alpha) << ',' << format_double(b.r_bins[k]) << ','
            << format_double(res.g_mean[k]) << ',' << format_double(res.g_q05[k]) << ','
            << format_double(res.g_q95[k]) << ',' << format_double(res.g_theory[k]) << ','
            << format_double(res.g_printed_mean[k]) << '\n';
      }
    }
  }
  {
    auto out = open_table(root / "intensity.csv", header);
    out << "alpha,r_prime,count_mean,expected_count,area,rho_hat,rho_theory,center_re,center_im\n";
    for (const auto& res : b.results) {
      const double rho = theoretical_intensity(res.alpha, cfg.convention);
      for (std::size_t k = 0; k < res.r_prime.size(); ++k) {
        const double area = hyperbolic_disk_area(res.r_prime[k], cfg.convention);
        out << format_double(res.alpha) << ',' << format_double(res.r_prime[k]) << ','
            << format_double(res.count_mean[k]) << ',' << format_double(res.expected_count[k])
            << ',' << format_double(area) << ',' << format_double(res.count_mean[k] / area) << ','
            << format_double(rho) << ',' << format_double(res.intensity_center.real()) << ','
            << format_double(res.intensity_center.imag()) << '\n';
      }
    }
  }
  {
    auto out = open_table(root / "zero_counts.csv", header);
    out << "alpha,realization,seed,n_zeros,n_inner,expected_zeros\n";
    for (const auto& res : b.results) {
      for (std::size_t r = 0; r < res.zero_counts.size(); ++r) {
        out << format_double(res.alpha) << ',' << r << ',' << res.seeds[r] << ','
            << res.zero_counts[r] << ',' << res.inner_counts[r] << ','
            << format_double(res.expected_zeros) << '\n';
      }
    }
  }
  {
    auto out = open_table(root / "report.csv", header);
    const double lo = std::max(cfg.r_min, 0.05);
    const double hi = std::min(cfg.r_max, 0.5);
    out << "# r_range = " << format_double(lo) << "," << format_double(hi) << '\n';
    out << "alpha,mad,coverage,n_bins,mean_zero_count,expected_zero_count,zero_count_ratio\n";
    for (const auto& t : compare_to_theory(b, lo, hi)) {
      out << format_double(t.alpha) << ',' << format_double(t.mad) << ','
          << format_double(t.coverage) << ',' << t.n_bins << ',' << format_double(t.mean_zero_count)
          << ',' << format_double(t.expected_zero_count) << ',' << format_double(t.zero_count_ratio)
          << '\n';
    }
  }
  if (cfg.keep_zeros) {
    for (const auto& res : b.results) {
      for (std::size_t r = 0; r < res.zeros.size(); ++r) {
        Settings meta = header;
        meta.emplace_back("realization", std::to_string(r));
        meta.emplace_back("realization_seed", std::to_string(res.seeds[r]));
        meta.emplace_back("zeros_alpha", format_double(res.alpha));
        meta.emplace_back("window", "guarded");
        const auto name = "zeros_a" + alpha_tag(res.alpha) + "_r" + std::to_string(r) + ".csv";
        std::ofstream out(root / name);
        if (!out) throw std::invalid_argument("cannot write '" + (root / name).string() + "'");
        write_zeros_csv(out, res.zeros[r], meta);
      }
    }
  }
}

}  // namespace ast
