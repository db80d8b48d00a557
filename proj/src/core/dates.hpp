#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace specrisk {

/// Calendar date, ISO-8601 (YYYY-MM-DD) on the wire.
struct Date {
  int year = 0;
  int month = 0;
  int day = 0;

  auto operator<=>(const Date&) const = default;

  bool valid() const;
  std::string to_string() const;

  /// Parses "YYYY-MM-DD". Throws Error(Parse) on malformed or impossible dates.
  static Date parse(std::string_view text);
};

struct DateRange {
  Date begin;  // inclusive
  Date end;    // inclusive

  bool contains(const Date& d) const { return begin <= d && d <= end; }
};

}  // namespace specrisk
