#pragma once

#include <iosfwd>
#include <string>

#include "ast/config.hpp"
#include "ast/transform.hpp"
#include "ast/zeros.hpp"

namespace ast {

/// Signal CSV: header `index,real,imag`, one row per sample. A
/// `# fs = <Hz>` comment line, if present, overrides `fs`; samples are placed
/// on the centered time grid.
DiscreteSignal read_signal_csv(const std::string& path, double fs);
void write_signal_csv(const std::string& path, const DiscreteSignal& y);

/// Binary signal: magic "ASTSIG01", uint64 N, float64 fs, then N interleaved
/// little-endian float64 (re, im) pairs.
DiscreteSignal read_signal_binary(const std::string& path);
void write_signal_binary(const std::string& path, const DiscreteSignal& y);

/// Reads CSV or binary depending on the file's leading bytes.
DiscreteSignal read_signal(const std::string& path, double fs);

/// TFMatrix CSV: `# key = value` metadata (alpha, log_scale, convention and
/// both grids), then `j,m,x,xi,re,im,abs` rows holding the stored (scaled)
/// values. Extra header lines are written verbatim after the metadata.
void write_tfmatrix_csv(std::ostream& out, const TFMatrix& s, const Settings& extra = {});
TFMatrix read_tfmatrix_csv(const std::string& path);

/// Zero CSV: `j,m,x,xi,re_w,im_w`. `meta` is written as comment lines.
void write_zeros_csv(std::ostream& out, const std::vector<ZeroPoint>& zeros, const Settings& meta);
/// Disk points only (for GAF zeros; j, m, x and xi stay empty).
void write_disk_points_csv(std::ostream& out, const std::vector<Complex>& points,
                           const Settings& meta);

struct ZeroFile {
  Settings meta;
  std::vector<Complex> points;
};
ZeroFile read_zeros_csv(const std::string& path);

}  // namespace ast
