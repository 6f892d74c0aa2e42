#pragma once

#include <string>

namespace errscope {

/// Shortest decimal that parses back to the same double.
std::string format_roundtrip(double value);

/// Shortest decimal with at most six significant digits; "-0" prints as "0".
std::string format_compact(double value);

}  // namespace errscope
