// Small formatting helpers shared by the CSV writers and the CLI.

#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

namespace hcg {

// Shortest decimal representation that round-trips the double exactly.
inline std::string to_short_string(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

inline std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace hcg
