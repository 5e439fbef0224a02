#pragma once

#include <charconv>
#include <string>

namespace windings {

/// Shortest decimal string that reads back to the same double.
inline std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

/// Fixed number of significant digits, for human-facing tables.
inline std::string format_significant(double x, int digits) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, digits);
  return {buf, res.ptr};
}

}  // namespace windings
