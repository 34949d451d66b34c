#include <doctest.h>

#include <set>

#include "amlgen/error.hpp"
#include "amlgen/patterns.hpp"
#include "amlgen/population.hpp"
#include "amlgen/validate.hpp"
#include "support.hpp"

using namespace amlgen;

namespace {

Graph population(std::int64_t individuals = 600, std::uint64_t seed = 21) {
  const GraphConfig cfg = testing::small_graph(individuals, 3, seed);
  return generate_population(cfg, cfg.risk_weights, Rng(seed));
}

std::pair<NodeIndex, NodeIndex> two_accounts(const Graph& g) {
  const NodeIndex a = g.accounts_of(*g.find("I000001")).front();
  const NodeIndex b = g.accounts_of(*g.find("I000002")).front();
  return {a, b};
}

}  // namespace

TEST_CASE("layering with fixed decay") {
  const Graph g = population();
  const IntermediaryPool pool(g, LayeringPool::uniform);
  const auto [src, dst] = two_accounts(g);
  LayeringConfig lp;
  lp.h_min = lp.h_max = 2;
  lp.decay_min = lp.decay_max = 0.99;
  Rng r(3);
  const Timestamp t = g.window().start + kDay;
  const auto edges = apply_layering(g, pool, src, dst, Money::from_units(10000.0), t, lp, r);
  REQUIRE(edges.size() == 3);
  CHECK(edges[0].amount.str() == "10000.00");
  CHECK(edges[1].amount.str() == "9900.00");
  CHECK(edges[2].amount.str() == "9801.00");
  CHECK(edges[0].source == src);
  CHECK(edges[2].target == dst);
  CHECK(edges[0].timestamp == t);
  for (std::size_t i = 1; i < edges.size(); ++i) {
    CHECK(edges[i].source == edges[i - 1].target);
    const Seconds d = edges[i].timestamp - edges[i - 1].timestamp;
    CHECK(d >= lp.hop_delay_min);
    CHECK(d <= lp.hop_delay_max);
  }
}

TEST_CASE("layering disabled is the base transfer") {
  const Graph g = population();
  const IntermediaryPool pool(g, LayeringPool::uniform);
  const auto [src, dst] = two_accounts(g);
  LayeringConfig lp;
  lp.enabled = false;
  Rng r(3);
  const Timestamp t = g.window().start + 5;
  const auto edges = apply_layering(g, pool, src, dst, Money::from_cents(123456), t, lp, r);
  REQUIRE(edges.size() == 1);
  CHECK(edges[0].source == src);
  CHECK(edges[0].target == dst);
  CHECK(edges[0].amount.cents() == 123456);
  CHECK(edges[0].timestamp == t);
}

TEST_CASE("layering properties") {
  const Graph g = population();
  const IntermediaryPool pool(g, LayeringPool::uniform);
  const auto [src, dst] = two_accounts(g);
  const LayeringConfig lp;
  Rng r(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto edges =
        apply_layering(g, pool, src, dst, Money::from_cents(r.uniform_int(100000, 5000000)),
                       g.window().start + kDay, lp, r);
    CHECK(edges.size() >= static_cast<std::size_t>(lp.h_min + 1));
    CHECK(edges.size() <= static_cast<std::size_t>(lp.h_max + 1));
    std::set<NodeIndex> seen{src, dst};
    for (std::size_t i = 1; i < edges.size(); ++i) {
      CHECK(seen.insert(edges[i].source).second);
      const double ratio = edges[i].amount.units() / edges[i - 1].amount.units();
      CHECK(ratio <= lp.decay_max + 1e-4);
      CHECK(ratio >= lp.decay_min - 1e-4);
      CHECK(edges[i].amount < edges[i - 1].amount);
    }
    CHECK(edges.back().timestamp - edges.front().timestamp <= max_layering_span(lp));
  }

  Graph empty = population(2);
  const IntermediaryPool small(empty, LayeringPool::uniform);
  LayeringConfig big;
  big.h_min = big.h_max = 50;
  const auto [a, b] = two_accounts(empty);
  CHECK_THROWS_AS(apply_layering(empty, small, a, b, Money::from_cents(100), empty.window().start,
                                 big, r),
                  PoolExhausted);
}

TEST_CASE("every typology produces valid instances") {
  GraphConfig cfg = testing::small_graph(2000, 3, 5);
  Graph g = generate_population(cfg, cfg.risk_weights, Rng(cfg.master_seed));
  const PatternConfig p = testing::patterns(6);
  const InjectionResult res = inject_all(g, cfg, p, Rng(cfg.master_seed), 1);
  CHECK(res.warnings.empty());
  REQUIRE(res.instances.size() == 30);
  const NodeFacts facts = node_facts(g);
  std::size_t fraud_edges = 0;
  for (const auto& inst : res.instances) {
    const InstanceReport rep = validate_instance(inst, facts);
    for (const auto& v : rep.violations) {
      FAIL_CHECK(inst.key() << " " << v.constraint << ": " << v.observed << " vs " << v.required);
    }
    for (std::size_t i = 0; i < inst.transactions.size(); ++i) {
      const auto& tx = inst.transactions[i];
      CHECK(tx.edge.is_fraud);
      CHECK(g.window().contains(tx.edge.timestamp));
      if (i > 0) CHECK(inst.transactions[i - 1].edge.timestamp <= tx.edge.timestamp);
      const EntityNode& s = g.node(tx.edge.source);
      const EntityNode& t = g.node(tx.edge.target);
      if (s.node_type != NodeType::cash) CHECK(s.is_fraudulent);
      if (t.node_type != NodeType::cash) CHECK(t.is_fraudulent);
    }
    for (const auto& [role_name, nodes] : inst.roles) {
      for (NodeIndex n : nodes) {
        if (g.node(n).node_type == NodeType::cash) continue;
        CHECK(g.node(n).is_fraudulent);
        CHECK_FALSE(g.in_cluster(ClusterId::legit, n));
      }
    }
    fraud_edges += inst.transactions.size();
  }
  CHECK(fraud_edges == res.fraud_edge_count());
  std::size_t graph_fraud = 0;
  for (const auto& e : g.edges()) graph_fraud += e.is_fraud ? 1 : 0;
  CHECK(graph_fraud == fraud_edges);
}

TEST_CASE("typology-specific shapes") {
  GraphConfig cfg = testing::small_graph(2000, 6, 9);
  Graph g = generate_population(cfg, cfg.risk_weights, Rng(cfg.master_seed));
  PatternConfig p = testing::patterns(4);
  p.overseas_transfers.timing = TimingMode::periodic;
  const InjectionResult res = inject_all(g, cfg, p, Rng(cfg.master_seed), 1);
  for (const auto& inst : res.instances) {
    if (inst.typology == Typology::synchronised) {
      const auto n = inst.roles.at("coordinator").size();
      CHECK(n >= 3);
      CHECK(n <= 8);
    }
    if (inst.typology == Typology::overseas_transfers &&
        inst.params_used.at("timing") == "periodic") {
      std::vector<Timestamp> starts;
      for (const auto& tx : inst.transactions) {
        if (tx.role == role::transfer && tx.step == 0) starts.push_back(tx.edge.timestamp);
      }
      const Seconds period = inst.params_used.at("period").get<Seconds>();
      CHECK((period == 7 * kDay || period == 14 * kDay || period == 30 * kDay));
      for (std::size_t i = 1; i < starts.size(); ++i) {
        CHECK(std::llabs(starts[i] - starts[i - 1] - period) <= 6 * kHour);
      }
    }
  }
}

TEST_CASE("injection determinism and substream isolation") {
  const GraphConfig cfg = testing::small_graph(1500, 3, 4);
  auto run = [&](const PatternConfig& p, unsigned threads) {
    Graph g = generate_population(cfg, cfg.risk_weights, Rng(cfg.master_seed));
    return inject_all(g, cfg, p, Rng(cfg.master_seed), threads);
  };
  auto dump = [](const InjectionResult& r, Typology only) {
    std::string s;
    for (const auto& inst : r.instances) {
      if (inst.typology != only) continue;
      s += inst.key() + inst.params_used.dump();
      for (const auto& tx : inst.transactions) {
        s += std::to_string(tx.edge.source) + ">" + std::to_string(tx.edge.target) + "@" +
             std::to_string(tx.edge.timestamp) + "$" + tx.edge.amount.str() + ";";
      }
    }
    return s;
  };
  const PatternConfig base = testing::patterns(3);
  const auto a = run(base, 1);
  const auto b = run(base, 4);
  PatternConfig more = base;
  more.u_turn.instance_count = 6;
  const auto c = run(more, 1);
  for (Typology t : kAllTypologies) CHECK(dump(a, t) == dump(b, t));
  CHECK(dump(a, Typology::overseas_transfers) == dump(c, Typology::overseas_transfers));
  CHECK(dump(a, Typology::rapid_movement) == dump(c, Typology::rapid_movement));
}

TEST_CASE("zero instances inject nothing") {
  const GraphConfig cfg = testing::small_graph(200, 1);
  Graph g = generate_population(cfg, cfg.risk_weights, Rng(1));
  const auto edges_before = g.edges().size();
  const InjectionResult res = inject_all(g, cfg, PatternConfig{}, Rng(1));
  CHECK(res.instances.empty());
  CHECK(g.edges().size() == edges_before);
  for (const auto& n : g.nodes()) CHECK_FALSE(n.is_fraudulent);
}

TEST_CASE("instances that cannot be placed are skipped or fatal under strict") {
  GraphConfig cfg = testing::small_graph(30, 1);
  cfg.business_ratio = 0.0;
  PatternConfig p;
  p.front_business.instance_count = 2;
  {
    Graph g = generate_population(cfg, cfg.risk_weights, Rng(1));
    const InjectionResult res = inject_all(g, cfg, p, Rng(1));
    CHECK(res.instances.empty());
    CHECK(res.warnings.size() == 2);
  }
  p.strict = true;
  Graph g = generate_population(cfg, cfg.risk_weights, Rng(1));
  CHECK_THROWS_AS(inject_all(g, cfg, p, Rng(1)), NoEligibleEntities);
}
