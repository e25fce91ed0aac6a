#include "ast/signal_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ast {

namespace {

constexpr std::array<char, 8> kMagic = {'A', 'S', 'T', 'S', 'I', 'G', '0', '1'};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    out.push_back(line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  for (auto& f : out) {
    while (!f.empty() && (f.back() == '\r' || f.back() == ' ')) f.pop_back();
  }
  return out;
}

double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad number '" + s + "' in " + what);
  }
}

const std::string* find_key(const Settings& s, const std::string& key) {
  for (const auto& [k, v] : s) {
    if (k == key) return &v;
  }
  return nullptr;
}

double require_double(const Settings& s, const std::string& key, const std::string& path) {
  const auto* v = find_key(s, key);
  if (!v) throw std::invalid_argument("missing '" + key + "' in header of '" + path + "'");
  return to_double(*v, path);
}

// Data rows of a CSV file after comment lines and the header row.
std::vector<std::vector<std::string>> data_rows(const std::string& text, const std::string& header,
                                                const std::string& path) {
  std::istringstream in(text);
  std::string line;
  bool seen_header = false;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!seen_header) {
      if (line != header) {
        throw std::invalid_argument("'" + path + "': expected header '" + header + "'");
      }
      seen_header = true;
      continue;
    }
    rows.push_back(split_csv(line));
  }
  if (!seen_header) throw std::invalid_argument("'" + path + "': missing header '" + header + "'");
  return rows;
}

void write_meta(std::ostream& out, const Settings& meta) {
  for (const auto& [k, v] : meta) out << "# " << k << " = " << v << '\n';
}

void write_f64(std::ostream& out, double v) {
  static_assert(std::endian::native == std::endian::little, "little-endian host required");
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

}  // namespace

DiscreteSignal read_signal_csv(const std::string& path, double fs) {
  const std::string text = slurp(path);
  const Settings meta = parse_header_settings(text);
  if (const auto* v = find_key(meta, "fs")) fs = to_double(*v, path);
  const auto rows = data_rows(text, "index,real,imag", path);
  DiscreteSignal y;
  y.samples.reserve(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].size() != 3) throw std::invalid_argument("'" + path + "': expected 3 columns");
    if (to_double(rows[k][0], path) != static_cast<double>(k)) {
      throw std::invalid_argument("'" + path + "': indices must run 0..N-1 in order");
    }
    y.samples.emplace_back(to_double(rows[k][1], path), to_double(rows[k][2], path));
  }
  y.grid = make_centered_time_grid(y.samples.size(), fs);
  return y;
}

void write_signal_csv(const std::string& path, const DiscreteSignal& y) {
  auto out = open_out(path);
  out << "# fs = " << format_double(1.0 / y.grid.delta_x) << '\n' << "index,real,imag\n";
  for (std::size_t k = 0; k < y.samples.size(); ++k) {
    out << k << ',' << format_double(y.samples[k].real()) << ','
        << format_double(y.samples[k].imag()) << '\n';
  }
}

DiscreteSignal read_signal_binary(const std::string& path) {
  const std::string data = slurp(path);
  if (data.size() < 24 || !std::equal(kMagic.begin(), kMagic.end(), data.begin())) {
    throw std::invalid_argument("'" + path + "' is not an ASTSIG01 file");
  }
  std::uint64_t n = 0;
  double fs = 0.0;
  std::memcpy(&n, data.data() + 8, 8);
  std::memcpy(&fs, data.data() + 16, 8);
  if (data.size() != 24 + 16 * n) throw std::invalid_argument("'" + path + "': truncated payload");
  DiscreteSignal y;
  y.samples.resize(n);
  for (std::uint64_t k = 0; k < n; ++k) {
    double re = 0.0;
    double im = 0.0;
    std::memcpy(&re, data.data() + 24 + 16 * k, 8);
    std::memcpy(&im, data.data() + 32 + 16 * k, 8);
    y.samples[k] = {re, im};
  }
  y.grid = make_centered_time_grid(n, fs);
  return y;
}

void write_signal_binary(const std::string& path, const DiscreteSignal& y) {
  auto out = open_out(path, std::ios::out | std::ios::binary);
  out.write(kMagic.data(), kMagic.size());
  const std::uint64_t n = y.samples.size();
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  write_f64(out, 1.0 / y.grid.delta_x);
  for (const auto& v : y.samples) {
    write_f64(out, v.real());
    write_f64(out, v.imag());
  }
}

DiscreteSignal read_signal(const std::string& path, double fs) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::array<char, 8> head{};
  in.read(head.data(), head.size());
  if (in.gcount() == 8 && head == kMagic) return read_signal_binary(path);
  return read_signal_csv(path, fs);
}

void write_tfmatrix_csv(std::ostream& out, const TFMatrix& s, const Settings& extra) {
  const Settings meta = {
      {"alpha", format_double(s.params.alpha())},
      {"log_scale", format_double(s.log_scale)},
      {"convention", to_string(s.convention)},
      {"x_min", format_double(s.time_grid.x_min)},
      {"x_max", format_double(s.time_grid.x_max)},
      {"delta_x", format_double(s.time_grid.delta_x)},
      {"n_samples", std::to_string(s.n_time())},
      {"xi_min", format_double(s.freq_grid.xi_min)},
      {"xi_max", format_double(s.freq_grid.xi_max)},
      {"n_channels", std::to_string(s.n_channels())},
  };
  out << "# value = re + i im times exp(log_scale)\n";
  write_meta(out, meta);
  write_meta(out, extra);
  out << "j,m,x,xi,re,im,abs\n";
  for (std::size_t m = 0; m < s.n_channels(); ++m) {
    const double xi = s.freq_grid.at(m);
    for (std::size_t j = 0; j < s.n_time(); ++j) {
      const Complex v = s(j, m);
      out << j << ',' << m << ',' << format_double(s.time_grid.at(j)) << ',' << format_double(xi)
          << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << ','
          << format_double(std::abs(v)) << '\n';
    }
  }
}

TFMatrix read_tfmatrix_csv(const std::string& path) {
  const std::string text = slurp(path);
  const Settings meta = parse_header_settings(text);
  TFMatrix s;
  s.params = WindowParams::from_alpha(require_double(meta, "alpha", path));
  s.log_scale = require_double(meta, "log_scale", path);
  if (const auto* c = find_key(meta, "convention")) s.convention = parse_phase_convention(c->c_str());
  const auto n = static_cast<std::size_t>(require_double(meta, "n_samples", path));
  s.time_grid = make_time_grid(require_double(meta, "x_min", path),
                               require_double(meta, "x_max", path), n);
  s.time_grid.delta_x = require_double(meta, "delta_x", path);
  s.freq_grid = make_freq_grid(require_double(meta, "xi_min", path),
                               require_double(meta, "xi_max", path),
                               static_cast<std::size_t>(require_double(meta, "n_channels", path)));
  s.values.assign(n * s.n_channels(), Complex(0.0, 0.0));
  std::vector<char> seen(s.values.size(), 0);
  for (const auto& row : data_rows(text, "j,m,x,xi,re,im,abs", path)) {
    if (row.size() != 7) throw std::invalid_argument("'" + path + "': expected 7 columns");
    const double j = to_double(row[0], path);
    const double m = to_double(row[1], path);
    if (j < 0 || m < 0 || j >= static_cast<double>(n) || m >= static_cast<double>(s.n_channels())) {
      throw std::invalid_argument("'" + path + "': cell index out of range");
    }
    const auto idx = static_cast<std::size_t>(m) * n + static_cast<std::size_t>(j);
    s.values[idx] = {to_double(row[4], path), to_double(row[5], path)};
    seen[idx] = 1;
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw std::invalid_argument("'" + path + "': missing grid cells");
  }
  return s;
}

void write_zeros_csv(std::ostream& out, const std::vector<ZeroPoint>& zeros, const Settings& meta) {
  write_meta(out, meta);
  out << "j,m,x,xi,re_w,im_w\n";
  for (const auto& z : zeros) {
    out << z.j << ',' << z.m << ',' << format_double(z.x) << ',' << format_double(z.xi) << ','
        << format_double(z.w.real()) << ',' << format_double(z.w.imag()) << '\n';
  }
}

void write_disk_points_csv(std::ostream& out, const std::vector<Complex>& points,
                           const Settings& meta) {
  write_meta(out, meta);
  out << "j,m,x,xi,re_w,im_w\n";
  for (const auto& w : points) {
    out << ",,,," << format_double(w.real()) << ',' << format_double(w.imag()) << '\n';
  }
}

ZeroFile read_zeros_csv(const std::string& path) {
  const std::string text = slurp(path);
  ZeroFile f;
  f.meta = parse_header_settings(text);
  for (const auto& row : data_rows(text, "j,m,x,xi,re_w,im_w", path)) {
    if (row.size() != 6) throw std::invalid_argument("'" + path + "': expected 6 columns");
    const Complex w(to_double(row[4], path), to_double(row[5], path));
    if (!(std::abs(w) < 1.0)) throw std::invalid_argument("'" + path + "': point outside the disk");
    f.points.push_back(w);
  }
  return f;
}

}  // namespace ast
