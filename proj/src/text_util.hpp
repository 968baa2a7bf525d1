#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "qdiff/error.hpp"

namespace qdiff::detail {

inline double parse_number(std::string_view s, const std::string& what) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double x = 0.0;
  const char* begin = s.data();
  if (!s.empty() && s.front() == '+') ++begin;
  const auto [p, ec] = std::from_chars(begin, s.data() + s.size(), x);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size())
    throw ConfigError("invalid number '" + std::string(s) + "' in " + what);
  return x;
}

/// "2,1" -> {2, 1}; empty input gives an empty list.
inline std::vector<double> parse_numbers(std::string_view s, const std::string& what) {
  std::vector<double> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    out.push_back(parse_number(s.substr(start, comma - start), what));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

/// Shortest round-trip decimal form.
inline std::string format_number(double x) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

}  // namespace qdiff::detail
