#pragma once

#include <charconv>
#include <string>

namespace epinet {

// Shortest representation that round-trips; stable across runs.
inline std::string format_double(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

}  // namespace epinet
