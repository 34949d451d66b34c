#include "amlgen/population.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "amlgen/error.hpp"

namespace amlgen {
namespace {

constexpr std::array kFirstNames{
    "Anna",  "Bram",   "Chloe", "Daan",   "Emma",  "Finn",  "Greta", "Hugo",
    "Iris",  "Jesse",  "Julia", "Lars",   "Lotte", "Milan", "Noor",  "Olaf",
    "Pien",  "Quinten", "Roos", "Sem",    "Tess",  "Thijs", "Vera",  "Wout",
    "Yara",  "Zoe",    "Amir",  "Sofia",  "Luca",  "Mila",  "Omar",  "Elif"};

constexpr std::array kLastNames{
    "de Jong", "Jansen",  "de Vries", "van den Berg", "van Dijk", "Bakker",  "Janssen",
    "Visser",  "Smit",    "Meijer",   "de Boer",      "Mulder",   "de Groot", "Bos",
    "Vos",     "Peters",  "Hendriks", "van Leeuwen",  "Dekker",   "Brouwer", "de Wit",
    "Dijkstra", "Smits",  "de Graaf", "van der Meer", "Kok",      "Jacobs",  "Vermeulen"};

constexpr std::array kBankWords{"Capital", "Savings", "Commerce", "Trust",   "Mutual",
                                "United",  "Harbour", "Northern", "Central", "Delta"};

constexpr std::array kAgeWeights{0.12, 0.18, 0.26, 0.24, 0.20};
constexpr std::array kAgeGroups{AgeGroup::age_18_24, AgeGroup::age_25_34, AgeGroup::age_35_49,
                                AgeGroup::age_50_64, AgeGroup::age_65_plus};

std::string make_id(char prefix, std::size_t n, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%0*zu", prefix, width, n);
  return buf;
}

int year_of(Timestamp t) {
  const auto days = std::chrono::sys_days{std::chrono::days{t / kDay}};
  return static_cast<int>(std::chrono::year_month_day{days}.year());
}

template <typename Entry>
std::vector<double> weights_of(const std::vector<Entry>& entries) {
  std::vector<double> w;
  w.reserve(entries.size());
  for (const auto& e : entries) w.push_back(e.weight);
  return w;
}

}  // namespace

bool is_overseas(const Graph& graph, NodeIndex n, const std::string& home_country) {
  return graph.node(n).country_code != home_country;
}

std::vector<NodeIndex> attach_accounts(Graph& graph, NodeIndex owner, std::size_t n,
                                       const GraphConfig& cfg, Rng& rng) {
  if (owner >= graph.node_count() || !graph.node(owner).is_entity()) {
    throw UnknownOwner("cannot attach accounts to node index " + std::to_string(owner));
  }
  const auto institutions = graph.institutions();
  if (institutions.empty()) throw ValidationError("no institutions to hold accounts");

  const EntityNode& holder = graph.node(owner);
  const std::string country = holder.country_code;
  const bool hrj = holder.high_risk_jurisdiction;
  int earliest = year_of(graph.window().start) - 25;
  if (const auto* biz = holder.business()) earliest = std::max(earliest, biz->incorporation_year);
  const int latest = year_of(graph.window().start);

  // Distinct institutions per owner while they last.
  std::vector<NodeIndex> order(institutions.begin(), institutions.end());
  rng.shuffle(std::span<NodeIndex>(order));

  auto make_account = [&](AccountCategory cat, NodeIndex inst) {
    EntityNode acc;
    acc.node_id = make_id('A', graph.node_count(), 7);
    acc.node_type = NodeType::account;
    acc.country_code = country;
    acc.high_risk_jurisdiction = hrj;
    AccountAttrs a;
    a.account_category = cat;
    a.currency = cfg.currency;
    a.owner = owner;
    a.institution = inst;
    a.creation_year = static_cast<int>(rng.uniform_int(earliest, std::max(earliest, latest)));
    acc.attrs = a;
    const NodeIndex idx = graph.add_node(std::move(acc));
    graph.add_ownership(owner, idx);
    return idx;
  };

  std::vector<NodeIndex> created;
  const std::size_t existing = graph.accounts_of(owner).size();
  for (std::size_t i = 0; i < n; ++i) {
    const NodeIndex inst = order[(existing + i) % order.size()];
    AccountCategory cat = AccountCategory::current;
    if (existing + i > 0 && rng.bernoulli(0.5)) cat = AccountCategory::savings;
    created.push_back(make_account(cat, inst));
  }
  if (!graph.cash_account_of(owner)) make_account(AccountCategory::cash, order.front());
  return created;
}

Graph generate_population(const GraphConfig& cfg, const RiskWeights& weights, const Rng& rng) {
  Graph graph(cfg.window());
  const int start_year = year_of(graph.window().start);

  const auto country_w = weights_of(cfg.country_table);
  const auto occupation_w = weights_of(cfg.occupations);
  const auto category_w = weights_of(cfg.business_categories);

  auto make_entity_base = [&](Rng& r, EntityNode& node) {
    const auto& c = cfg.country_table[r.weighted_index(country_w)];
    node.country_code = c.code;
    node.high_risk_jurisdiction = c.high_risk;
  };

  // Institutions and the cash node first so ids are stable.
  {
    Rng r = rng.derive("population/institutions");
    for (std::int64_t i = 1; i <= cfg.institution_count; ++i) {
      EntityNode node;
      node.node_id = make_id('F', static_cast<std::size_t>(i), 4);
      node.node_type = NodeType::institution;
      make_entity_base(r, node);
      InstitutionAttrs attrs;
      attrs.institution_name = std::string(kBankWords[r.index(kBankWords.size())]) + " Bank " +
                               std::to_string(i);
      node.attrs = attrs;
      graph.add_node(std::move(node));
    }
  }
  {
    EntityNode cash;
    cash.node_id = "CASH";
    cash.node_type = NodeType::cash;
    cash.country_code = cfg.home_country;
    graph.set_cash_node(graph.add_node(std::move(cash)));
  }

  std::vector<NodeIndex> individuals;
  {
    Rng r = rng.derive("population/individuals");
    individuals.reserve(static_cast<std::size_t>(cfg.individual_count));
    for (std::int64_t i = 1; i <= cfg.individual_count; ++i) {
      EntityNode node;
      node.node_id = make_id('I', static_cast<std::size_t>(i), 6);
      node.node_type = NodeType::individual;
      make_entity_base(r, node);
      IndividualAttrs attrs;
      attrs.name = std::string(kFirstNames[r.index(kFirstNames.size())]) + " " +
                   kLastNames[r.index(kLastNames.size())];
      attrs.age_group = kAgeGroups[r.weighted_index(kAgeWeights)];
      const auto& occ = cfg.occupations[r.weighted_index(occupation_w)];
      attrs.occupation = occ.name;
      attrs.high_risk_occupation = occ.high_risk;
      attrs.high_paid = occ.high_paid;
      attrs.gender = r.bernoulli(0.5) ? "female" : "male";
      node.attrs = attrs;
      individuals.push_back(graph.add_node(std::move(node)));
    }
  }

  std::vector<NodeIndex> businesses;
  {
    Rng r = rng.derive("population/businesses");
    const auto count = static_cast<std::int64_t>(
        std::llround(cfg.business_ratio * static_cast<double>(cfg.individual_count)));
    for (std::int64_t i = 1; i <= count; ++i) {
      EntityNode node;
      node.node_id = make_id('B', static_cast<std::size_t>(i), 6);
      node.node_type = NodeType::business;
      make_entity_base(r, node);
      BusinessAttrs attrs;
      const auto& cat = cfg.business_categories[r.weighted_index(category_w)];
      attrs.business_category = cat.name;
      attrs.is_high_risk_category = cat.cash_intensive;
      attrs.incorporation_year = static_cast<int>(r.uniform_int(start_year - 40, start_year - 1));
      const double employees = std::exp(1.8 + 1.1 * r.normal());
      attrs.number_of_employees =
          static_cast<int>(std::clamp(std::llround(employees), 1LL, 500LL));
      attrs.owner = individuals[r.index(individuals.size())];
      node.attrs = attrs;
      businesses.push_back(graph.add_node(std::move(node)));
    }
    for (NodeIndex b : businesses) graph.add_ownership(graph.node(b).business()->owner, b);
  }

  {
    Rng r = rng.derive("population/accounts");
    for (NodeIndex owner : individuals) {
      const auto n = r.uniform_int(cfg.accounts_per_individual.min, cfg.accounts_per_individual.max);
      attach_accounts(graph, owner, static_cast<std::size_t>(n), cfg, r);
    }
    for (NodeIndex owner : businesses) {
      const auto n = r.uniform_int(cfg.accounts_per_business.min, cfg.accounts_per_business.max);
      attach_accounts(graph, owner, static_cast<std::size_t>(n), cfg, r);
    }
  }

  graph.init_clusters();
  auto score_and_index = [&](NodeIndex n) {
    graph.node(n).risk_score = risk_score(graph.node(n), weights);
    graph.index_entity(n);
  };
  for (NodeIndex n : individuals) score_and_index(n);
  for (NodeIndex n : businesses) score_and_index(n);
  return graph;
}

PopulationSummary summarize(const Graph& graph, std::uint64_t seed) {
  PopulationSummary s;
  for (const auto& n : graph.nodes()) ++s.node_counts[n.node_type];
  for (const auto& [c, members] : graph.clusters()) s.cluster_sizes[c] = members.size();
  s.seed_fingerprint = mix64(seed);
  return s;
}

}  // namespace amlgen
