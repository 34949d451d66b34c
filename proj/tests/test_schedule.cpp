#include <doctest.h>

#include <algorithm>

#include "amlgen/error.hpp"
#include "amlgen/schedule.hpp"

using namespace amlgen;

namespace {
constexpr Timestamp kT0 = 1735689600;  // 2025-01-01
}

TEST_CASE("burst examples") {
  Rng r(1);
  CHECK(schedule_burst(1, kHour, kT0, r) == std::vector<Timestamp>{kT0});
  const auto five = schedule_burst(5, 24 * kHour, kT0, r);
  CHECK(five.size() == 5);
  CHECK(five.back() - five.front() <= kDay);
  Rng a(77), b(77);
  CHECK(schedule_burst(100, kHour, kT0, a) == schedule_burst(100, kHour, kT0, b));
  CHECK_THROWS_AS(schedule_burst(3, 0, kT0, r), InvalidWindow);
}

TEST_CASE("periodic examples") {
  Rng r(2);
  CHECK(schedule_periodic(4, 7 * kDay, 0, kT0, r) ==
        std::vector<Timestamp>{kT0, kT0 + 7 * kDay, kT0 + 14 * kDay, kT0 + 21 * kDay});
  CHECK(schedule_periodic(1, 7 * kDay, 6 * kHour, kT0, r) == std::vector<Timestamp>{kT0});
  const auto ten = schedule_periodic(10, 7 * kDay, 6 * kHour, kT0, r);
  for (std::size_t i = 1; i < ten.size(); ++i) {
    const Seconds gap = ten[i] - ten[i - 1];
    CHECK(gap >= 7 * kDay - 6 * kHour);
    CHECK(gap <= 7 * kDay + 6 * kHour);
  }
  CHECK_THROWS_AS(schedule_periodic(3, kHour, kHour, kT0, r), InvalidPeriod);
  CHECK_THROWS_AS(schedule_periodic(3, 0, 0, kT0, r), InvalidPeriod);
}

TEST_CASE("schedule properties over many draws") {
  Rng r(3);
  for (int trial = 0; trial < 500; ++trial) {
    const auto n = static_cast<std::size_t>(r.uniform_int(1, 40));
    const Seconds window = r.uniform_int(1, 72) * kHour;
    const auto burst = schedule_burst(n, window, kT0, r);
    REQUIRE(burst.size() == n);
    CHECK(burst.front() == kT0);
    CHECK(std::is_sorted(burst.begin(), burst.end()));
    CHECK(burst.back() - burst.front() <= window);

    const Seconds period = r.uniform_int(2, 30) * kDay;
    const Seconds eps = r.uniform_int(0, 12) * kHour;
    const auto periodic = schedule_periodic(n, period, eps, kT0, r);
    REQUIRE(periodic.size() == n);
    CHECK(periodic.front() == kT0);
    CHECK(periodic.back() - periodic.front() <= periodic_span(n, period, eps));
    for (std::size_t i = 1; i < n; ++i) {
      const Seconds gap = periodic[i] - periodic[i - 1];
      CHECK(gap >= period - eps);
      CHECK(gap <= period + eps);
    }
  }
}
