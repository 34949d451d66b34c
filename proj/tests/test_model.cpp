#include <doctest.h>

#include "amlgen/error.hpp"
#include "amlgen/model.hpp"
#include "support.hpp"

using namespace amlgen;

namespace {

EntityNode person(const std::string& id, AgeGroup age = AgeGroup::age_35_49, bool hrj = false,
                  bool hr_occ = false) {
  EntityNode n;
  n.node_id = id;
  n.node_type = NodeType::individual;
  n.country_code = hrj ? "XX" : "NL";
  n.high_risk_jurisdiction = hrj;
  IndividualAttrs a;
  a.age_group = age;
  a.high_risk_occupation = hr_occ;
  n.attrs = a;
  return n;
}

EntityNode company(const std::string& id, int employees, bool cash) {
  EntityNode n;
  n.node_id = id;
  n.node_type = NodeType::business;
  n.country_code = "NL";
  BusinessAttrs b;
  b.number_of_employees = employees;
  b.is_high_risk_category = cash;
  n.attrs = b;
  return n;
}

EntityNode account(const std::string& id) {
  EntityNode n;
  n.node_id = id;
  n.node_type = NodeType::account;
  n.attrs = AccountAttrs{};
  return n;
}

Graph tiny_graph() {
  Graph g(testing::small_graph(10, 1).window());
  g.init_clusters();
  for (int i = 0; i < 6; ++i) {
    const auto n = g.add_node(person("I" + std::to_string(i), i % 2 ? AgeGroup::age_18_24
                                                                     : AgeGroup::age_35_49));
    g.node(n).risk_score = risk_score(g.node(n), RiskWeights{});
    g.index_entity(n);
  }
  g.add_node(account("A0"));
  g.add_node(account("A1"));
  return g;
}

}  // namespace

TEST_CASE("risk score oracles") {
  const RiskWeights w;
  CHECK(risk_score(person("a"), w) == doctest::Approx(0.05));
  CHECK(risk_score(person("b", AgeGroup::age_65_plus, true), w) ==
        doctest::Approx(0.05 + 0.15 + 0.20));
  CHECK(risk_score(person("c", AgeGroup::age_18_24, false, true), w) ==
        doctest::Approx(0.05 + 0.15 + 0.12));
  CHECK(risk_score(company("d", 3, true), w) == doctest::Approx(0.10 + 0.25 + 0.10));
  CHECK(risk_score(company("e", 50, false), w) == doctest::Approx(0.10));

  RiskWeights heavy;
  heavy.individual_base = 0.4;
  heavy.high_risk_age = 0.4;
  heavy.high_risk_jurisdiction = 0.4;
  CHECK(risk_score(person("f", AgeGroup::age_18_24, true), heavy) == doctest::Approx(0.9));
  CHECK_THROWS_AS(risk_score(account("g"), w), UnsupportedEntityType);
}

TEST_CASE("cluster assignment") {
  CHECK(assign_clusters(person("a")) == std::set<ClusterId>{ClusterId::legit});
  const std::set<ClusterId> expect{ClusterId::legit, ClusterId::young_adult_18_24,
                                   ClusterId::high_risk_age, ClusterId::high_risk_jurisdiction,
                                   ClusterId::vulnerable_age_high_risk_jurisdiction};
  EntityNode young = person("b", AgeGroup::age_18_24, true);
  CHECK(assign_clusters(young) == expect);
  young.is_fraudulent = true;
  auto after = expect;
  after.erase(ClusterId::legit);
  CHECK(assign_clusters(young) == after);
  CHECK(assign_clusters(company("c", 2, true)) ==
        std::set<ClusterId>{ClusterId::legit, ClusterId::cash_intensive_business,
                            ClusterId::very_small_company, ClusterId::cash_intensive_small_company});
  CHECK_THROWS_AS(assign_clusters(account("d")), UnsupportedEntityType);
}

TEST_CASE("marking fraud drops only the legit cluster") {
  Graph g = tiny_graph();
  const NodeIndex n = *g.find("I1");
  CHECK(g.in_cluster(ClusterId::legit, n));
  CHECK(g.in_cluster(ClusterId::young_adult_18_24, n));
  g.mark_fraudulent(n);
  CHECK_FALSE(g.in_cluster(ClusterId::legit, n));
  CHECK(g.in_cluster(ClusterId::young_adult_18_24, n));
  CHECK(g.node(n).is_fraudulent);
}

TEST_CASE("edge insertion") {
  Graph g = tiny_graph();
  const NodeIndex a = *g.find("A0"), b = *g.find("A1");
  TransactionEdge e;
  e.source = a;
  e.target = b;
  e.amount = Money::from_cents(100);
  e.timestamp = g.window().start + 10;
  const auto before = g.edges().size();
  CHECK(g.insert_transaction(e) == 0);
  CHECK(g.edges().size() == before + 1);

  TransactionEdge dangling = e;
  dangling.target = 999;
  CHECK_THROWS_AS(g.insert_transaction(dangling), DanglingEndpoint);
  TransactionEdge early = e;
  early.timestamp = g.window().start - 1;
  CHECK_THROWS_AS(g.insert_transaction(early), OutOfWindow);
  TransactionEdge late = e;
  late.timestamp = g.window().end;
  CHECK_THROWS_AS(g.insert_transaction(late), OutOfWindow);
  CHECK_THROWS_AS(g.add_node(account("A0")), ValidationError);
}

TEST_CASE("cluster selection") {
  const Graph g = tiny_graph();
  Rng r1(9), r2(9);
  CHECK(select_from_cluster(g, ClusterId::legit, 0, {}, r1).empty());

  const auto s1 = select_from_cluster(g, ClusterId::legit, 3, {}, r1);
  const auto s2 = select_from_cluster(g, ClusterId::legit, 3, {}, r2);
  CHECK(s1.size() == 3);
  CHECK(s1 == s2);
  for (std::size_t i = 1; i < s1.size(); ++i) {
    CHECK(g.node(s1[i - 1]).risk_score >= g.node(s1[i]).risk_score);
  }

  Rng r3(1), r4(2);
  const auto all1 = select_from_cluster(g, ClusterId::legit, 100, {}, r3);
  const auto all2 = select_from_cluster(g, ClusterId::legit, 100, {}, r4);
  CHECK(all1.size() == 6);
  CHECK(all1 == all2);

  const std::set<NodeIndex> exclude{*g.find("I1"), *g.find("I3")};
  for (NodeIndex n : select_from_cluster(g, ClusterId::young_adult_18_24, 5, exclude, r3)) {
    CHECK(n == *g.find("I5"));
  }

  Graph empty(testing::small_graph(10, 1).window());
  CHECK_THROWS_AS(select_from_cluster(empty, ClusterId::legit, 1, {}, r3), UnknownCluster);
}
