// astzeros: command-line front end for the transform, zero detection, GAF
// sampling, spatial statistics and the Monte Carlo experiment.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "ast/config.hpp"
#include "ast/experiment.hpp"
#include "ast/gaf.hpp"
#include "ast/signal_io.hpp"
#include "ast/spatial_stats.hpp"
#include "ast/transform.hpp"
#include "ast/zeros.hpp"

namespace {

using namespace ast;

struct Common {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> alpha;
  std::optional<std::size_t> n_samples;
  std::optional<double> fs;
  std::optional<std::size_t> channels;
  std::optional<double> xi_min;
  std::optional<double> xi_max;
  std::optional<std::size_t> realizations;
  std::optional<std::string> convention;
  std::optional<std::size_t> workers;
  bool keep_zeros = false;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config, "key = value config file");
  app->add_option("--out", c.out, "output file, or directory for experiment");
  app->add_option("--seed", c.seed, "master seed");
  app->add_option("--alpha", c.alpha, "GAF parameter alpha = 2 beta + 1 (comma list for experiment)");
  app->add_option("--n-samples", c.n_samples, "number of time samples N");
  app->add_option("--fs", c.fs, "sampling frequency in Hz");
  app->add_option("--channels", c.channels, "number of frequency channels M");
  app->add_option("--xi-min", c.xi_min, "lowest channel frequency in Hz");
  app->add_option("--xi-max", c.xi_max, "highest channel frequency in Hz");
  app->add_option("--realizations", c.realizations, "number of noise realizations");
  app->add_option("--convention", c.convention, "metric convention: unit or factor4")
      ->check(CLI::IsMember({"unit", "factor4"}));
  app->add_option("--workers", c.workers, "worker threads (0 = all cores)");
  app->add_flag("--keep-zeros", c.keep_zeros, "write per-realization zero lists");
}

// Config file first, then command-line flags on top.
ExperimentConfig resolve(const Common& c, const Settings& extra = {}) {
  Settings s;
  if (!c.config.empty()) s = read_settings_file(c.config);
  auto put = [&](const char* k, const std::string& v) { s.emplace_back(k, v); };
  if (c.seed) put("seed", std::to_string(*c.seed));
  if (c.alpha) put("alpha", *c.alpha);
  if (c.n_samples) put("n_samples", std::to_string(*c.n_samples));
  if (c.fs) put("fs", format_double(*c.fs));
  if (c.channels) put("channels", std::to_string(*c.channels));
  if (c.xi_min) put("xi_min", format_double(*c.xi_min));
  if (c.xi_max) put("xi_max", format_double(*c.xi_max));
  if (c.realizations) put("realizations", std::to_string(*c.realizations));
  if (c.convention) put("convention", *c.convention);
  if (c.workers) put("workers", std::to_string(*c.workers));
  if (c.keep_zeros) put("keep_zeros", "true");
  if (!c.out.empty()) put("out", c.out);
  for (const auto& kv : extra) s.push_back(kv);
  return config_from_settings(s);
}

// Writes to the file at `path`, or stdout for "" and "-".
template <class Fn>
void emit(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  fn(out);
}

const std::string* lookup(const Settings& s, const std::string& key) {
  for (const auto& [k, v] : s) {
    if (k == key) return &v;
  }
  return nullptr;
}

double lookup_double(const Settings& s, const std::string& key) {
  const auto* v = lookup(s, key);
  if (!v) throw std::invalid_argument("zero file header lacks '" + key + "'");
  return std::stod(*v);
}

// Rebuilds the observation window described by a zero file's header.
ObservationWindow window_from_header(const Settings& meta, double alpha, double max_step,
                                     Complex& center) {
  const auto* kind = lookup(meta, "window");
  if (kind && *kind == "disk") {
    center = {0.0, 0.0};
    return ObservationWindow::disk(lookup_double(meta, "window_radius"));
  }
  ExperimentConfig cfg;
  for (const char* k : {"n_samples", "fs", "channels", "xi_min", "xi_max", "border",
                        "channel_guard", "envelope_level", "time_margin", "nyquist_level"}) {
    if (const auto* v = lookup(meta, k)) apply_setting(cfg, k, *v);
  }
  TimeGrid tg;
  if (lookup(meta, "x_min")) {
    tg = make_time_grid(lookup_double(meta, "x_min"), lookup_double(meta, "x_max"), cfg.n_samples);
    tg.delta_x = lookup_double(meta, "delta_x");
  } else {
    tg = make_centered_time_grid(cfg.n_samples, cfg.fs);
  }
  const LogFreqGrid fg = make_freq_grid(cfg.xi_min, cfg.xi_max, cfg.n_channels);
  const ValidRegion region = guarded_region(tg, fg, WindowParams::from_alpha(alpha), cfg.guard);
  ObservationWindow win = guarded_window(region, tg, fg, max_step);
  center = deepest_point(region, tg, fg, win);
  return win;
}

Settings grid_meta(const TimeGrid& tg, const LogFreqGrid& fg) {
  return {{"x_min", format_double(tg.x_min)},     {"x_max", format_double(tg.x_max)},
          {"delta_x", format_double(tg.delta_x)}, {"n_samples", std::to_string(tg.n_samples)},
          {"fs", format_double(1.0 / tg.delta_x)}, {"xi_min", format_double(fg.xi_min)},
          {"xi_max", format_double(fg.xi_max)},   {"channels", std::to_string(fg.n_channels)}};
}

int fail(const std::string& command, const std::string& message, int code) {
  nlohmann::json j = {{"error", message}, {"command", command}, {"exit_code", code}};
  std::cerr << j.dump() << std::endl;
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analytic Stockwell transform zeros and hyperbolic GAF statistics"};
  app.require_subcommand(1);

  // transform
  Common tc;
  std::string t_input;
  std::string t_method = "spectral";
  std::string t_phase = "physical";
  auto* transform = app.add_subcommand("transform", "signal (CSV or binary) -> TFMatrix CSV");
  add_common(transform, tc);
  transform->add_option("--input", t_input, "signal file")->required();
  transform->add_option("--method", t_method, "spectral or direct")
      ->check(CLI::IsMember({"spectral", "direct"}));
  transform->add_option("--phase", t_phase, "direct-sum phase convention: physical or literal")
      ->check(CLI::IsMember({"physical", "literal"}));

  // zeros
  Common zc;
  std::string z_input;
  std::size_t z_border = 1;
  std::size_t z_channel_guard = 2;
  double z_level = 1e-4;
  double z_nyquist = 1e-4;
  std::string z_neighborhood = "8";
  auto* zeros = app.add_subcommand("zeros", "TFMatrix CSV -> zero CSV");
  add_common(zeros, zc);
  zeros->add_option("--input", z_input, "TFMatrix CSV")->required();
  zeros->add_option("--border", z_border, "border cells");
  zeros->add_option("--channel-guard", z_channel_guard, "guard channels at each extreme");
  zeros->add_option("--envelope-level", z_level, "window envelope level for the time margin");
  zeros->add_option("--nyquist-level", z_nyquist, "drop channels leaking more than this past Nyquist");
  zeros->add_option("--neighborhood", z_neighborhood, "8 or 4")->check(CLI::IsMember({"8", "4"}));

  // gaf
  Common gc;
  double g_r_max = 0.9;
  std::size_t g_truncation = 0;
  std::size_t g_count = 1;
  auto* gaf = app.add_subcommand("gaf", "sample hyperbolic GAFs -> zero CSV");
  add_common(gaf, gc);
  gaf->add_option("--r-max", g_r_max, "disk radius of the returned zeros");
  gaf->add_option("--truncation", g_truncation, "number of coefficients (default: tail rule)");
  gaf->add_option("--count", g_count, "number of samples; more than one writes a directory");

  // stats
  Common sc;
  std::string s_input;
  std::string s_intensity_out;
  double s_h = 0.01;
  double s_r_min = 0.01;
  double s_r_max = 0.6;
  double s_r_step = 0.005;
  std::optional<double> s_r_guard;
  std::size_t s_n_intensity = 40;
  std::string s_norm = "calibrated";
  auto* stats = app.add_subcommand("stats", "zero CSV -> RadialStats CSV");
  add_common(stats, sc);
  stats->add_option("--input", s_input, "zero CSV")->required();
  stats->add_option("--bandwidth", s_h, "ring width h in pseudo-hyperbolic units");
  stats->add_option("--r-min", s_r_min, "first r bin");
  stats->add_option("--r-max", s_r_max, "last r bin");
  stats->add_option("--r-step", s_r_step, "r bin spacing");
  stats->add_option("--r-guard", s_r_guard, "inner-point guard (default r_max + h/2)");
  stats->add_option("--intensity-out", s_intensity_out, "also write the intensity table here");
  stats->add_option("--n-intensity", s_n_intensity, "number of intensity radii");
  stats->add_option("--normalization", s_norm, "calibrated or printed")
      ->check(CLI::IsMember({"calibrated", "printed"}));

  // experiment
  Common ec;
  auto* experiment = app.add_subcommand("experiment", "config -> result directory");
  add_common(experiment, ec);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("parse", e.what(), 2);
  }

  std::string command = app.get_subcommands().front()->get_name();
  try {
    if (*transform) {
      const ExperimentConfig cfg = resolve(tc);
      const double fs = tc.fs ? *tc.fs : cfg.fs;
      const DiscreteSignal y = read_signal(t_input, fs);
      const LogFreqGrid fg = make_freq_grid(cfg.xi_min, cfg.xi_max, cfg.n_channels);
      const WindowParams p = WindowParams::from_alpha(cfg.alphas.front());
      const TFMatrix s = t_method == "direct"
                             ? dast_direct(y, fg, p, parse_phase_convention(t_phase.c_str()))
                             : dast_spectral(y, fg, p);
      emit(tc.out, [&](std::ostream& os) {
        write_tfmatrix_csv(os, s, {{"method", t_method}, {"source", t_input}});
      });
    } else if (*zeros) {
      const TFMatrix s = read_tfmatrix_csv(z_input);
      EdgeGuard guard;
      guard.border = z_border;
      guard.channel_guard = z_channel_guard;
      guard.envelope_level = z_level;
      guard.nyquist_level = z_nyquist;
      const Neighborhood nb = z_neighborhood == "4" ? Neighborhood::four : Neighborhood::eight;
      const ZeroSet zs = detect_zeros(s, guard, nb);
      Settings meta = {{"window", "guarded"}, {"alpha", format_double(s.params.alpha())}};
      for (auto& kv : grid_meta(s.time_grid, s.freq_grid)) meta.push_back(kv);
      meta.emplace_back("border", std::to_string(guard.border));
      meta.emplace_back("channel_guard", std::to_string(guard.channel_guard));
      meta.emplace_back("envelope_level", format_double(guard.envelope_level));
      meta.emplace_back("nyquist_level", format_double(guard.nyquist_level));
      meta.emplace_back("neighborhood", z_neighborhood);
      meta.emplace_back("expected_zeros",
                        format_double(expected_zero_count(zs.region, s.time_grid, s.freq_grid,
                                                          s.params.alpha())));
      emit(zc.out, [&](std::ostream& os) { write_zeros_csv(os, zs.entries, meta); });
    } else if (*gaf) {
      const ExperimentConfig cfg = resolve(gc);
      const double alpha = cfg.alphas.front();
      const std::size_t n_t = g_truncation ? g_truncation : truncation_for(alpha, g_r_max);
      if (g_count > 1 && gc.out.empty()) {
        throw std::invalid_argument("--count > 1 needs --out DIR");
      }
      if (g_count > 1) std::filesystem::create_directories(gc.out);
      for (std::size_t k = 0; k < g_count; ++k) {
        const std::uint64_t seed = cfg.seed + k;
        const auto pts = gaf_zeros(sample_gaf(alpha, n_t, seed), g_r_max);
        const Settings meta = {{"window", "disk"},
                               {"window_radius", format_double(g_r_max)},
                               {"alpha", format_double(alpha)},
                               {"truncation", std::to_string(n_t)},
                               {"seed", std::to_string(seed)},
                               {"expected_zeros", format_double(expected_zero_count_disk(alpha, g_r_max))}};
        const std::string path = g_count > 1
                                     ? (std::filesystem::path(gc.out) /
                                        ("gaf_zeros_" + std::to_string(seed) + ".csv")).string()
                                     : gc.out;
        emit(path, [&](std::ostream& os) { write_disk_points_csv(os, pts, meta); });
      }
    } else if (*stats) {
      const ZeroFile zf = read_zeros_csv(s_input);
      double alpha = 0.0;
      if (sc.alpha) {
        alpha = std::stod(*sc.alpha);
      } else if (const auto* v = lookup(zf.meta, "zeros_alpha")) {
        alpha = std::stod(*v);
      } else {
        alpha = lookup_double(zf.meta, "alpha");
      }
      const MetricConvention conv =
          sc.convention ? parse_metric_convention(sc.convention->c_str()) : MetricConvention::factor4;
      Complex center;
      const ObservationWindow win = window_from_header(zf.meta, alpha, 0.005, center);
      const double r_guard = s_r_guard ? *s_r_guard : s_r_max + 0.5 * s_h;
      const auto mask = classify_inner(zf.points, win, r_guard);
      const auto bins = make_r_bins(s_r_min, s_r_max, s_r_step);
      const PairNormalization norm =
          s_norm == "printed" ? PairNormalization::printed : PairNormalization::calibrated;
      const RadialStats st = estimate_pair_correlation(zf.points, mask, bins, s_h, alpha, norm);
      emit(sc.out, [&](std::ostream& os) {
        os << "# source = " << s_input << "\n# alpha = " << format_double(alpha)
           << "\n# h = " << format_double(s_h) << "\n# r_guard = " << format_double(r_guard)
           << "\n# normalization = " << to_string(norm) << "\nr,g_hat,n_pairs,n_centers\n";
        for (std::size_t k = 0; k < bins.size(); ++k) {
          os << format_double(st.r[k]) << ',' << format_double(st.g[k]) << ',' << st.n_pairs[k]
             << ',' << st.n_centers << '\n';
        }
      });
      if (!s_intensity_out.empty()) {
        const double rp_max = pseudo_to_hyperbolic(win.distance_to_boundary(center));
        emit(s_intensity_out, [&](std::ostream& os) {
          os << "# source = " << s_input << "\n# convention = " << to_string(conv)
             << "\n# center = " << format_double(center.real()) << ','
             << format_double(center.imag()) << "\nr_prime,count,area,rho_hat\n";
          for (std::size_t k = 1; k <= s_n_intensity; ++k) {
            const double rp = rp_max * static_cast<double>(k) / static_cast<double>(s_n_intensity);
            const double area = hyperbolic_disk_area(rp, conv);
            os << format_double(rp) << ',' << count_within(zf.points, center, rp) << ','
               << format_double(area) << ','
               << format_double(estimate_intensity(zf.points, center, rp, conv)) << '\n';
          }
        });
      }
    } else if (*experiment) {
      const ExperimentConfig cfg = resolve(ec);
      const ResultBundle b = run_experiment(cfg);
      write_bundle(b, cfg.out_dir);
      for (const auto& t : compare_to_theory(b, std::max(cfg.r_min, 0.05), std::min(cfg.r_max, 0.5))) {
        std::printf("alpha=%g mad=%.4f coverage=%.3f zero_count_ratio=%.4f\n", t.alpha, t.mad,
                    t.coverage, t.zero_count_ratio);
      }
    }
  } catch (const std::exception& e) {
    return fail(command, e.what(), 1);
  }
  return 0;
}
