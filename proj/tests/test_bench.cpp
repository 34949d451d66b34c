#include <doctest.h>

#include <cmath>

#include "amlgen/bench.hpp"
#include "amlgen/error.hpp"
#include "support.hpp"

using namespace amlgen;

TEST_CASE("power-law fit recovers an exact exponent") {
  const std::vector<double> n{1000, 2000, 3500, 5000, 8000};
  std::vector<double> t;
  for (double x : n) t.push_back(0.002 * std::pow(x, 1.164));
  const PowerFit f = fit_power_law(n, t);
  CHECK(f.alpha == doctest::Approx(1.164).epsilon(1e-9));
  CHECK(std::exp(f.intercept) == doctest::Approx(0.002).epsilon(1e-9));
  CHECK(f.r2 == doctest::Approx(1.0));
  CHECK_THROWS_AS(fit_power_law({1000}, {1.0}), ValidationError);
  CHECK_THROWS_AS(fit_power_law({1000, 1000}, {1.0, 2.0}), ValidationError);
}

TEST_CASE("bench rows and fit agree") {
  BenchOptions opts;
  opts.scales = {100, 200, 400};
  opts.instances_per_8k = 0.0;
  opts.isolate = false;
  GraphConfig g = testing::small_graph(100, 1, 4);
  const BenchReport rep = run_bench(g, PatternConfig{}, opts);
  REQUIRE(rep.rows.size() == 3);
  std::vector<double> n, t;
  for (const auto& r : rep.rows) {
    CHECK(r.elements > 0);
    CHECK(r.seconds > 0.0);
    CHECK(r.peak_rss_bytes > 0);
    n.push_back(static_cast<double>(r.elements));
    t.push_back(r.seconds);
  }
  CHECK(fit_power_law(n, t).alpha == doctest::Approx(rep.fit.alpha));
  CHECK(rep.to_json().at("rows").size() == 3);
  CHECK(rep.to_csv().rfind("individuals,", 0) == 0);
  opts.scales = {100};
  CHECK_THROWS_AS(run_bench(g, PatternConfig{}, opts), ValidationError);
}
