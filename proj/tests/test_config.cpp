#include <doctest.h>

#include <algorithm>
#include <fstream>

#include "amlgen/config.hpp"
#include "amlgen/error.hpp"
#include "support.hpp"

using namespace amlgen;

namespace {

bool has_warning(const std::vector<std::string>& ws, const std::string& prefix) {
  return std::any_of(ws.begin(), ws.end(),
                     [&](const std::string& w) { return w.rfind(prefix, 0) == 0; });
}

}  // namespace

TEST_CASE("graph config with the low-illicit shape") {
  const GraphConfig g = parse_graph_config(
      "master_seed: 11\nindividual_count: 8000\nsimulation_start: 2025-01-01\n"
      "simulation_end: 2025-12-31\ntarget_illicit_ratio: 0.001\n");
  CHECK(g.individual_count == 8000);
  CHECK(g.master_seed == 11);
  CHECK(g.window().days() == 365);
  CHECK(g.target_illicit_ratio == doctest::Approx(0.001));
  CHECK(g.per_account_daily_rate_cap == 2.0);
  CHECK(g.reporting_threshold.cents() == 1000000);
}

TEST_CASE("graph config errors") {
  CHECK_THROWS_AS(parse_graph_config("individual_count: 10\n"), MissingSeed);
  CHECK_THROWS_AS(parse_graph_config("master_seed: 1\nsimulation_start: 2025-03-01\n"
                                     "simulation_end: 2025-03-01\n"),
                  ValidationError);
  CHECK_THROWS_AS(parse_graph_config("master_seed: 1\ntarget_illicit_ratio: 0\n"), ValidationError);
  CHECK_THROWS_AS(parse_graph_config("master_seed: 1\nindividual_count: 0\n"), ValidationError);
  CHECK_THROWS_AS(parse_graph_config("master_seed: [1\n"), ParseError);
  try {
    parse_graph_config("master_seed: 1\nindividual_count: -4\n");
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("individual_count") != std::string::npos);
  }
}

TEST_CASE("window is half-open over whole days") {
  const GraphConfig g = testing::small_graph(10, 3);
  const TimeWindow w = g.window();
  CHECK(w.start == parse_date("2025-01-01").midnight());
  CHECK(w.end == parse_date("2025-04-01").midnight());
  CHECK(w.contains(w.start));
  CHECK_FALSE(w.contains(w.end));
}

TEST_CASE("graph config round-trips through yaml") {
  GraphConfig g = testing::small_graph(123, 2, 99);
  g.background.transaction_budget = 5000;
  g.background.salary_schedule = SalarySchedule::biweekly;
  const GraphConfig back = parse_graph_config(to_yaml(g));
  CHECK(back == g);
}

TEST_CASE("default weights are normalised") {
  const auto w = default_graph_config().normalized_background_weights();
  double sum = 0.0;
  for (const auto& [c, v] : w) sum += v;
  CHECK(sum == doctest::Approx(1.0));
  CHECK(w.at(Category::payment) == doctest::Approx(0.68 / 0.99).epsilon(0.02));
}

TEST_CASE("pattern config defaults and ranges") {
  const PatternConfig empty = parse_pattern_config("");
  CHECK(empty.total_instances() == 0);
  CHECK(empty == PatternConfig{});
  CHECK(empty.rapid_movement.max_duration == 128 * kHour);
  CHECK(empty.synchronised.coordinators == IntRange{3, 8});

  const PatternConfig p = parse_pattern_config(
      "rapid_movement:\n  instance_count: 4\n  layering:\n    h_min: 2\n    h_max: 5\n");
  CHECK(p.rapid_movement.instance_count == 4);
  CHECK(p.rapid_movement.layering.h_min == 2);
  CHECK(p.rapid_movement.layering.h_max == 5);

  CHECK_THROWS_AS(parse_pattern_config("u_turn:\n  fee: [0.5, 0.1]\n"),
                  ValidationError);
  CHECK_THROWS_AS(parse_pattern_config("front_business:\n  layering:\n    decay_max: 1.0\n"),
                  ValidationError);
  CHECK_THROWS_AS(parse_pattern_config("synchronised:\n  coordinators: [5, 2]\n"), ValidationError);
}

TEST_CASE("pattern config round-trips through yaml") {
  PatternConfig p = testing::patterns(7);
  p.overseas_transfers.timing = TimingMode::periodic;
  p.front_business.layering.pool = LayeringPool::high_risk_cluster;
  p.u_turn.fee = {0.015, 0.02};
  CHECK(parse_pattern_config(to_yaml(p)) == p);
}

TEST_CASE("combined warnings") {
  GraphConfig g = default_graph_config();
  g.individual_count = 8000;
  const auto li = validate_combined(g, testing::patterns(64));
  CHECK_FALSE(has_warning(li, "insufficient eligible entities likely"));
  CHECK_FALSE(has_warning(li, "no fraud will be injected"));

  g.individual_count = 100;
  CHECK(has_warning(validate_combined(g, testing::patterns(1000)),
                    "insufficient eligible entities likely"));
  CHECK(has_warning(validate_combined(g, PatternConfig{}), "no fraud will be injected"));
}

TEST_CASE("loading from disk") {
  const auto dir = testing::scratch("config");
  std::ofstream(dir / "g.yaml") << "master_seed: 5\nindividual_count: 50\n";
  CHECK(load_graph_config(dir / "g.yaml").individual_count == 50);
  CHECK_THROWS_AS(load_graph_config(dir / "missing.yaml"), ParseError);
}
