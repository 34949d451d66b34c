#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>

namespace amlgen {

/// Unix seconds, UTC. The simulation has a single time zone.
using Timestamp = std::int64_t;
/// Signed span in whole seconds.
using Seconds = std::int64_t;

inline constexpr Seconds kMinute = 60;
inline constexpr Seconds kHour = 3600;
inline constexpr Seconds kDay = 86400;

/// Calendar date with day precision.
struct Date {
  std::chrono::sys_days days;

  friend auto operator<=>(const Date&, const Date&) = default;

  [[nodiscard]] Timestamp midnight() const {
    return static_cast<Timestamp>(days.time_since_epoch().count()) * kDay;
  }
  [[nodiscard]] std::string str() const;
};

/// Parses YYYY-MM-DD. Throws ParseError.
Date parse_date(std::string_view text);

/// Accepts a bare integer (seconds) or an integer/decimal with one of the
/// suffixes s, m, h, d, w. "1.5h" -> 5400. Throws ParseError.
Seconds parse_duration(std::string_view text);

/// Renders as "<n>s"; parse_duration(format_duration(x)) == x.
std::string format_duration(Seconds s);

/// Half-open simulation window [start, end).
struct TimeWindow {
  Timestamp start = 0;
  Timestamp end = 0;

  [[nodiscard]] bool contains(Timestamp t) const { return t >= start && t < end; }
  [[nodiscard]] Seconds length() const { return end - start; }
  [[nodiscard]] std::int64_t days() const { return length() / kDay; }
};

/// Seconds since midnight of the timestamp's day.
inline Seconds time_of_day(Timestamp t) {
  const Seconds r = t % kDay;
  return r < 0 ? r + kDay : r;
}

inline Timestamp day_start(Timestamp t) { return t - time_of_day(t); }

}  // namespace amlgen
