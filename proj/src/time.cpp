#include "amlgen/time.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "amlgen/error.hpp"

namespace amlgen {

std::string Date::str() const {
  const std::chrono::year_month_day ymd{days};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

Date parse_date(std::string_view text) {
  int y = 0;
  unsigned m = 0;
  unsigned d = 0;
  auto field = [&](std::string_view part, auto& out) {
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
    return ec == std::errc{} && ptr == part.data() + part.size();
  };
  if (text.size() != 10 || text[4] != '-' || text[7] != '-' || !field(text.substr(0, 4), y) ||
      !field(text.substr(5, 2), m) || !field(text.substr(8, 2), d)) {
    throw ParseError("invalid date '" + std::string(text) + "', expected YYYY-MM-DD");
  }
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                        std::chrono::day{d}};
  if (!ymd.ok()) throw ParseError("invalid calendar date '" + std::string(text) + "'");
  return Date{std::chrono::sys_days{ymd}};
}

Seconds parse_duration(std::string_view text) {
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  if (text.empty()) throw ParseError("empty duration");
  Seconds unit = 1;
  switch (text.back()) {
    case 's': unit = 1; break;
    case 'm': unit = kMinute; break;
    case 'h': unit = kHour; break;
    case 'd': unit = kDay; break;
    case 'w': unit = 7 * kDay; break;
    default: unit = 0; break;
  }
  std::string_view number = unit == 0 ? text : text.substr(0, text.size() - 1);
  if (unit == 0) unit = 1;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), value);
  if (ec != std::errc{} || ptr != number.data() + number.size() || !std::isfinite(value)) {
    throw ParseError("invalid duration '" + std::string(text) + "'");
  }
  return static_cast<Seconds>(std::llround(value * static_cast<double>(unit)));
}

std::string format_duration(Seconds s) { return std::to_string(s) + "s"; }

}  // namespace amlgen
