#pragma once

// Locale-independent number rendering for CSV, config and CLI output.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

namespace vodmesh {

// Shortest text that parses back to the same double.
inline std::string format_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

// Six significant digits, trailing zeros kept ("0.400000", "82.5000"). The
// program never calls setlocale, so printf runs in the "C" locale.
inline std::string format_sig6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.6g", v);
  return buf;
}

}  // namespace vodmesh
