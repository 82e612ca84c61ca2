#pragma once

// Small text helpers shared by the parsers. Not part of the public API.

#include <string>
#include <string_view>
#include <vector>

namespace meanmap::detail {

std::string trim(std::string_view text);
std::string lower(std::string_view text);
std::vector<std::string> split(std::string_view text, char sep);
/// Splits on any run of whitespace or ';'.
std::vector<std::string> split_tokens(std::string_view text);

/// Full-string decimal/scientific parse; throws ParseError naming the token.
double parse_real(std::string_view token);
/// As parse_real, also accepting inf, +inf, -inf (case-insensitive).
double parse_extended_real(std::string_view token);
long long parse_integer(std::string_view token);

/// Shortest representation that round-trips.
std::string format_double(double x);

}  // namespace meanmap::detail
