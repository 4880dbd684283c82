#pragma once

#include <charconv>
#include <string>

namespace homest {

/// Shortest round-trip decimal representation of `value`.
inline std::string format_double(double value) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

}  // namespace homest
