#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <set>

#include "amlgen/error.hpp"
#include "amlgen/pipeline.hpp"
#include "amlgen/validate.hpp"
#include "support.hpp"

using namespace amlgen;
namespace fs = std::filesystem;

namespace {

struct Fixture {
  GraphConfig cfg = testing::small_graph(1500, 3, 31);
  GenerationResult run = generate(cfg, testing::patterns(3), 2);
  NodeFacts facts = node_facts(run.graph);

  const PatternInstance& first(Typology t) const {
    for (const auto& i : run.instances) {
      if (i.typology == t) return i;
    }
    throw Error("no instance");
  }
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

bool names(const InstanceReport& r, const std::string& constraint) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const Violation& v) { return v.constraint == constraint; });
}

}  // namespace

TEST_CASE("generated instances pass") {
  const auto& f = fixture();
  REQUIRE(f.run.instances.size() == 15);
  for (const auto& inst : f.run.instances) {
    const auto rep = validate_instance(inst, f.facts);
    CHECK_MESSAGE(rep.pass(), inst.key());
    CHECK(rep.key == inst.key());
  }
  CHECK(validate_instance(f.first(Typology::front_business), f.facts).pass());
}

TEST_CASE("u-turn with a ten percent hop fee fails the fee constraint") {
  const auto& f = fixture();
  PatternInstance inst = f.first(Typology::u_turn);
  bool changed = false;
  for (std::size_t k = 1; k < inst.transactions.size() && !changed; ++k) {
    if (inst.transactions[k].role == role::hop) {
      inst.transactions[k].edge.amount = inst.transactions[k - 1].edge.amount.scaled(0.90);
      changed = true;
    }
  }
  REQUIRE(changed);
  const auto rep = validate_instance(inst, f.facts);
  CHECK_FALSE(rep.pass());
  CHECK(names(rep, "hop_fee"));
}

TEST_CASE("rapid movement spanning 200 hours fails the duration bound") {
  const auto& f = fixture();
  PatternInstance inst = f.first(Typology::rapid_movement);
  Timestamp first_arrival = std::numeric_limits<Timestamp>::max();
  std::map<int, Timestamp> leg_end;
  for (const auto& tx : inst.transactions) {
    if (tx.role == role::inflow) leg_end[tx.leg] = std::max(leg_end[tx.leg], tx.edge.timestamp);
  }
  for (const auto& [leg, t] : leg_end) first_arrival = std::min(first_arrival, t);
  PatternTransaction* last = nullptr;
  for (auto& tx : inst.transactions) {
    if (tx.role == role::withdrawal && (!last || tx.edge.timestamp >= last->edge.timestamp)) last = &tx;
  }
  REQUIRE(last != nullptr);
  last->edge.timestamp = first_arrival + 200 * kHour;
  const auto rep = validate_instance(inst, f.facts);
  CHECK(names(rep, "max_duration"));
}

TEST_CASE("violations only name constraints from the typology table") {
  const auto& f = fixture();
  Rng r(8);
  for (const auto& base : f.run.instances) {
    std::set<std::string> allowed;
    for (const auto& spec : constraint_table(base.typology)) allowed.insert(spec.name);
    allowed.insert("params_used");
    for (int trial = 0; trial < 40; ++trial) {
      PatternInstance inst = base;
      const auto k = r.index(inst.transactions.size());
      auto& e = inst.transactions[k].edge;
      switch (r.index(4)) {
        case 0: e.amount = e.amount.scaled(r.uniform(0.2, 3.0)); break;
        case 1: e.timestamp += r.uniform_int(-30, 30) * kDay; break;
        case 2: e.is_fraud = false; break;
        default: e.target = inst.transactions[r.index(inst.transactions.size())].edge.source; break;
      }
      for (const auto& v : validate_instance(inst, f.facts).violations) {
        CHECK_MESSAGE(allowed.count(v.constraint), v.constraint);
      }
    }
    PatternInstance broken = base;
    broken.params_used = nlohmann::json::object();
    CHECK(names(validate_instance(broken, f.facts), "params_used"));
  }
}

TEST_CASE("dataset statistics") {
  std::vector<TransactionEdge> edges(4);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edges[i].source = 0;
    edges[i].target = 1;
    edges[i].category = Category::payment;
    edges[i].amount = Money::from_cents(100 * static_cast<std::int64_t>(i + 1));
  }
  const DatasetStats legit = dataset_stats(edges, {false, false});
  CHECK(legit.illicit_ratio == 0.0);
  CHECK(legit.imbalance == 0.0);
  CHECK(legit.categories.at(Category::payment).median == doctest::Approx(2.5));
  CHECK(legit.categories.at(Category::payment).share == doctest::Approx(1.0));

  std::vector<TransactionEdge> many(1000, edges[0]);
  many[0].is_fraud = true;
  many[1].amount = Money::from_units(7500.0);
  const DatasetStats s = dataset_stats(many, {true, false});
  CHECK(s.illicit_ratio == doctest::Approx(0.001));
  CHECK(s.imbalance == doctest::Approx(999.0));
  CHECK(s.structuring_share == doctest::Approx(1.0 / 999.0));
  CHECK(s.fraudulent_nodes == 1);
  CHECK(s.both_endpoint_fraud_fraction == 0.0);
}

TEST_CASE("report over a whole run") {
  const auto& f = fixture();
  const ValidationReport rep = validate_dataset(f.run.graph, f.run.instances);
  CHECK(rep.pass());
  CHECK(rep.failures() == 0);
  CHECK(rep.stats.fraud_edges == f.run.fraud_edges);
  CHECK(rep.to_json().at("instances").size() == f.run.instances.size());
  CHECK(rep.to_text().find("FAIL") == std::string::npos);
}

TEST_CASE("exported dataset validates the same as in memory") {
  const auto& f = fixture();
  const auto dir = testing::scratch("validate_export");
  write_dataset(f.run, f.cfg, testing::patterns(3), dir);
  const LoadedExport ex = load_export(dir);
  REQUIRE(ex.instances.size() == f.run.instances.size());
  for (std::size_t i = 0; i < ex.instances.size(); ++i) {
    CHECK(ex.instances[i].key() == f.run.instances[i].key());
    CHECK(ex.instances[i].transactions.size() == f.run.instances[i].transactions.size());
  }
  const ValidationReport rep = validate_export(dir);
  CHECK(rep.pass());
  const DatasetStats mem = dataset_stats(f.run.graph);
  CHECK(rep.stats.transaction_edges == mem.transaction_edges);
  CHECK(rep.stats.fraud_edges == mem.fraud_edges);
  CHECK(rep.stats.illicit_ratio == mem.illicit_ratio);
  CHECK(ex.manifest.at("statistics").at("achieved_illicit_ratio").get<double>() == mem.illicit_ratio);

  CHECK_THROWS_AS(load_export(dir / "missing"), IoError);
}
