#include "errscope/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace errscope {

std::string format_roundtrip(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

std::string format_compact(double value) {
  if (value == 0.0) return "0";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 6);
  std::string out(buf.data(), ptr);
  if (out == "-0") return "0";
  return out;
}

}  // namespace errscope
