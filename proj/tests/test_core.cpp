#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "amlgen/error.hpp"
#include "amlgen/money.hpp"
#include "amlgen/rng.hpp"
#include "amlgen/time.hpp"

using namespace amlgen;

TEST_CASE("rng streams are reproducible") {
  Rng a(42), b(42), c(43);
  std::vector<std::uint64_t> va, vb, vc;
  for (int i = 0; i < 64; ++i) {
    va.push_back(a());
    vb.push_back(b());
    vc.push_back(c());
  }
  CHECK(va == vb);
  CHECK(va != vc);
}

TEST_CASE("derived substreams ignore draws already taken") {
  Rng a(7), b(7);
  for (int i = 0; i < 1000; ++i) b();
  Rng da = a.derive("pattern/u_turn", 3), db = b.derive("pattern/u_turn", 3);
  for (int i = 0; i < 32; ++i) CHECK(da() == db());
  CHECK(a.derive("x", 0)() != a.derive("x", 1)());
  CHECK(a.derive("x", 0)() != a.derive("y", 0)());
}

TEST_CASE("rng bounds") {
  Rng r(1);
  for (int i = 0; i < 20000; ++i) {
    const double u = r.uniform();
    CHECK((u >= 0.0 && u < 1.0));
    const auto k = r.uniform_int(-3, 3);
    CHECK((k >= -3 && k <= 3));
    CHECK(r.index(5) < 5);
    const double x = r.uniform(2.5, 3.0);
    CHECK((x >= 2.5 && x < 3.0));
  }
  CHECK(r.uniform_int(9, 9) == 9);
  const std::vector<double> w{0.0, 1.0, 0.0};
  for (int i = 0; i < 100; ++i) CHECK(r.weighted_index(w) == 1);
}

TEST_CASE("uniform_int hits every value") {
  Rng r(3);
  std::set<std::int64_t> seen;
  for (int i = 0; i < 1000; ++i) seen.insert(r.uniform_int(0, 9));
  CHECK(seen.size() == 10);
}

TEST_CASE("shuffle is a permutation") {
  Rng r(5);
  std::vector<int> v{1, 2, 3, 4, 5, 6, 7, 8};
  auto s = v;
  r.shuffle(std::span<int>(s));
  std::sort(s.begin(), s.end());
  CHECK(s == v);
}

TEST_CASE("durations") {
  CHECK(parse_duration("90") == 90);
  CHECK(parse_duration("15m") == 900);
  CHECK(parse_duration("1.5h") == 5400);
  CHECK(parse_duration("2d") == 2 * kDay);
  CHECK(parse_duration("1w") == 7 * kDay);
  CHECK(parse_duration(format_duration(172800)) == 172800);
  CHECK_THROWS_AS(parse_duration("abc"), ParseError);
  CHECK_THROWS_AS(parse_duration("3y"), ParseError);
}

TEST_CASE("dates") {
  const Date d = parse_date("2025-02-28");
  CHECK(d.str() == "2025-02-28");
  CHECK(d.midnight() == 1740700800);
  CHECK_THROWS_AS(parse_date("2025-02-30"), ParseError);
  CHECK_THROWS_AS(parse_date("20250228"), ParseError);
  CHECK(time_of_day(d.midnight() + 3661) == 3661);
  CHECK(day_start(d.midnight() + 3661) == d.midnight());
}

TEST_CASE("money rounding and formatting") {
  CHECK(Money::from_units(9801.0).str() == "9801.00");
  CHECK(Money::from_units(0.005).cents() == 1);
  CHECK(Money::from_units(-0.005).cents() == -1);
  CHECK(Money::from_units(44.704).cents() == 4470);
  CHECK(Money::from_cents(1000000).scaled(0.99).cents() == 990000);
  CHECK(Money::from_cents(5).str() == "0.05");
  CHECK(parse_money("1234.5").cents() == 123450);
  CHECK(parse_money("7000").cents() == 700000);
  CHECK_THROWS_AS(parse_money("12.345"), ParseError);
  CHECK_THROWS_AS(parse_money("x"), ParseError);
}
