#pragma once

// Plain-text helpers shared by the CSV reader and the CLI.

#include <string>
#include <string_view>
#include <vector>

namespace attikit::text {

std::string_view trim(std::string_view s);

std::vector<std::string_view> split(std::string_view s, char sep);

/// Whole-string decimal parse; throws ParseError on junk or overflow.
double parse_real(std::string_view s);

/// Comma-separated reals; throws ParseError unless exactly `expected` values.
std::vector<double> parse_list(std::string_view s, std::size_t expected);

/// Fixed notation with `digits` after the point. A value that rounds to zero
/// prints without a minus sign.
std::string format_real(double v, int digits);

}  // namespace attikit::text
