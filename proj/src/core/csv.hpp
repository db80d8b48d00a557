#pragma once

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace specrisk {

/// Splits one CSV record on commas. No quoting: the toolkit's file formats
/// (dates, tickers, decimal numbers) never need it. Trailing '\r' is stripped.
std::vector<std::string> split_csv_line(std::string_view line);

/// Reads the next non-empty line; returns nullopt at EOF.
std::optional<std::string> next_line(std::istream& in);

/// Full-precision decimal-to-binary conversion. Throws Error(Parse) with
/// `context` in the message when `text` is not a plain floating-point number.
double parse_double(std::string_view text, const std::string& context);

/// Shortest round-trip decimal form of a double ("0.1", not
/// "0.10000000000000001"); used everywhere a number is written so output
/// artifacts are byte-stable.
std::string format_double(double value);

}  // namespace specrisk
