#pragma once

#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>

#include "offmoo/types.hpp"

namespace offmoo {

/// Shortest decimal string that parses back to the exact same binary64
/// value. Used everywhere a number is persisted so outputs are
/// byte-stable and round-trips are lossless.
inline std::string format_real(Real v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline Real parse_real(std::string_view s) {
  Real v{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("parse_real: bad number '" + std::string(s) +
                                "'");
  }
  return v;
}

}  // namespace offmoo
