#pragma once

#include <string>
#include <string_view>

namespace tailcens {

// Shortest decimal that round-trips to the same double ("nan"/"inf" for
// non-finite values).
std::string format_double(double x);

// Strict parse of a whole token; throws std::invalid_argument on trailing
// garbage or empty input.
double parse_double(std::string_view text);

std::string_view trim(std::string_view s);

}  // namespace tailcens
