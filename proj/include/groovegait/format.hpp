#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace groovegait {

/// Shortest text of `value` at `significant` digits ("%g"-style, but locale
/// independent). Negative zero is printed as "0".
std::string format_number(double value, int significant = 9);

/// Locale-independent strict parse of a whole field; throws std::invalid_argument.
double parse_number(std::string_view text);
long parse_integer(std::string_view text);

/// Splits one CSV line on commas. No quoting; a trailing '\r' is dropped.
std::vector<std::string_view> split_csv_line(std::string_view line);

}  // namespace groovegait
