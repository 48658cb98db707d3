#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace lvdyn::detail {

// %.9g-style text, locale independent.
inline std::string format_g(double v, int digits = 9) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

}  // namespace lvdyn::detail
