#include "core/dates.hpp"

#include <array>
#include <charconv>
#include <cstdio>

#include "core/error.hpp"

namespace specrisk {

namespace {

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
  static constexpr std::array<int, 12> kDays = {31, 28, 31, 30, 31, 30,
                                                31, 31, 30, 31, 30, 31};
  if (m == 2 && is_leap(y)) return 29;
  return kDays[m - 1];
}

int parse_int(std::string_view s) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    fail(ErrorCode::Parse, "invalid numeric field in date: '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace

bool Date::valid() const {
  return year >= 1 && year <= 9999 && month >= 1 && month <= 12 && day >= 1 &&
         day <= days_in_month(year, month);
}

std::string Date::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
  return buf;
}

Date Date::parse(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    fail(ErrorCode::Parse, "date '" + std::string(text) + "' is not YYYY-MM-DD");
  }
  Date d{parse_int(text.substr(0, 4)), parse_int(text.substr(5, 2)),
         parse_int(text.substr(8, 2))};
  if (!d.valid()) {
    fail(ErrorCode::Parse, "impossible calendar date '" + std::string(text) + "'");
  }
  return d;
}

}  // namespace specrisk
