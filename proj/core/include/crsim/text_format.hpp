#pragma once

#include <string>
#include <string_view>

namespace crsim {

// Shortest round-trip decimal form of x, locale-independent (std::to_chars).
// Every CSV/JSON writer in the toolkit goes through this so reruns stay
// byte-identical.
std::string format_double(double x);

// Strict double parse of an entire token; throws std::invalid_argument.
double parse_double(std::string_view token, const std::string& what);

// Strict non-negative integer parse; throws std::invalid_argument.
long long parse_integer(std::string_view token, const std::string& what);

}  // namespace crsim
