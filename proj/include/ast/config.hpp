#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ast {

/// Ordered list of key = value settings.
using Settings = std::vector<std::pair<std::string, std::string>>;

/// Parses flat `key = value` text. Blank lines and lines starting with '#'
/// are skipped; a repeated key keeps its last value. Throws
/// std::invalid_argument with the line number on malformed lines.
Settings parse_settings(std::string_view text);

Settings read_settings_file(const std::string& path);

/// Settings echoed in "# key = value" comment lines, as written at the top
/// of result files. Lines whose key is in `skip` are ignored.
Settings parse_header_settings(std::string_view text, const std::vector<std::string>& skip = {});

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view data);

std::string hex64(std::uint64_t v);

/// %.17g formatting: round-trips every double.
std::string format_double(double v);

}  // namespace ast
