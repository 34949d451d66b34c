#include "amlgen/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

#include "amlgen/error.hpp"
#include "amlgen/log.hpp"
#include "amlgen/population.hpp"

namespace amlgen {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double kDaysPerMonth = 30.4375;

void run_all(std::vector<std::function<void()>>& jobs, unsigned threads) {
  if (threads <= 1) {
    for (auto& j : jobs) j();
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(jobs.size());
  for (auto& j : jobs) pool.emplace_back(j);
  for (auto& t : pool) t.join();
}

}  // namespace

GenerationResult generate(const GraphConfig& gcfg, const PatternConfig& pcfg, unsigned threads) {
  const Rng root(gcfg.master_seed);
  GenerationResult r(generate_population(gcfg, gcfg.risk_weights, root));
  Graph& g = r.graph;
  log::info("population: " + std::to_string(g.node_count()) + " nodes");

  InjectionResult inj = inject_all(g, gcfg, pcfg, root, threads);
  r.warnings = inj.warnings;
  r.fraud_edges = static_cast<std::int64_t>(inj.fraud_edge_count());
  r.instances = std::move(inj.instances);
  log::info("patterns: " + std::to_string(r.instances.size()) + " instances, " +
            std::to_string(r.fraud_edges) + " fraud edges");

  Rng pool_rng = root.derive("background/pools");
  const AccountPools pools = build_account_pools(g, gcfg, pool_rng);
  const std::int64_t days = g.window().days();
  const std::size_t accounts = pools.random_pool.size();
  r.budget = r.fraud_edges > 0
                 ? compute_background_budget(gcfg, r.fraud_edges, accounts, pools.fraud.size(), days)
                 : fallback_background_budget(gcfg, accounts, pools.fraud.size(), days);
  r.warnings.insert(r.warnings.end(), r.budget.warnings.begin(), r.budget.warnings.end());

  const BackgroundBudget& b = r.budget;
  std::vector<TransactionEdge> salary, high_value, fraudster;
  std::vector<std::vector<TransactionEdge>> leakage(kAllCounterLeakageKinds.size());
  std::vector<std::function<void()>> jobs;
  jobs.emplace_back([&] {
    Rng rng = root.derive("background/salary");
    salary = generate_salaries(g, gcfg, rng, b.salary);
  });
  jobs.emplace_back([&] {
    Rng rng = root.derive("background/high_value");
    const double months = static_cast<double>(days) / kDaysPerMonth;
    const double r_monthly =
        pools.high_value.empty() ? 0.0
                                 : static_cast<double>(b.high_value) /
                                       (months * static_cast<double>(pools.high_value.size()));
    high_value = generate_high_value(g, gcfg, pools, r_monthly, months, rng);
  });
  jobs.emplace_back([&] {
    Rng rng = root.derive("background/fraudster");
    if (!pools.fraud.empty()) {
      fraudster = generate_fraudster_background(g, gcfg, pools, b.effective_daily_rate, days, rng);
    }
  });
  for (std::size_t i = 0; i < kAllCounterLeakageKinds.size(); ++i) {
    jobs.emplace_back([&, i] {
      const auto kind = kAllCounterLeakageKinds[i];
      Rng rng = root.derive("background/counter_leakage/" + std::string(to_string(kind)));
      leakage[i] = generate_counter_leakage(g, kind, gcfg, pools, b.counter_leakage.at(kind), rng);
    });
  }
  run_all(jobs, threads);

  auto& counts = r.background_counts;
  counts["salary"] = static_cast<std::int64_t>(salary.size());
  counts["high_value"] = static_cast<std::int64_t>(high_value.size());
  counts["fraudster"] = static_cast<std::int64_t>(fraudster.size());
  std::int64_t others = counts["salary"] + counts["high_value"] + counts["fraudster"];
  for (std::size_t i = 0; i < leakage.size(); ++i) {
    const auto n = static_cast<std::int64_t>(leakage[i].size());
    counts["counter_leakage/" + std::string(to_string(kAllCounterLeakageKinds[i]))] = n;
    others += n;
  }

  // Random payments absorb whatever the other patterns under- or overshot.
  std::int64_t random = std::max<std::int64_t>(b.background_target - others, 0);
  if (r.fraud_edges == 0) random = b.random;
  const std::int64_t cap = random_payment_count(gcfg.per_account_daily_rate_cap, days, accounts,
                                                gcfg.background.transaction_budget);
  if (random > cap) {
    random = cap;
    if (!b.cap_binds) {
      r.warnings.push_back("random payments capped at " + std::to_string(cap) +
                           "; the illicit ratio target will be exceeded");
    }
  }
  auto random_edges = generate_random_payments(g, gcfg, pools, random, root, threads);
  counts["random"] = static_cast<std::int64_t>(random_edges.size());

  std::vector<TransactionEdge> background;
  background.reserve(static_cast<std::size_t>(others) + random_edges.size());
  auto take = [&](std::vector<TransactionEdge>& v) {
    background.insert(background.end(), v.begin(), v.end());
    v.clear();
    v.shrink_to_fit();
  };
  take(salary);
  take(high_value);
  for (auto& v : leakage) take(v);
  take(fraudster);
  take(random_edges);

  merge_and_finalize(g, r.instances, std::move(background));
  r.split = temporal_split(g);
  for (const auto& w : r.warnings) log::warn(w);
  return r;
}

json generation_statistics(const GenerationResult& r, const GraphConfig& gcfg) {
  const Graph& g = r.graph;
  std::map<std::string, std::int64_t> nodes;
  std::int64_t fraud_nodes = 0;
  for (const auto& n : g.nodes()) {
    ++nodes[std::string(to_string(n.node_type))];
    fraud_nodes += n.is_fraudulent ? 1 : 0;
  }
  std::int64_t tx = 0, own = 0, fraud = 0;
  for (const auto& e : g.edges()) {
    if (e.relation == Relation::transaction) {
      ++tx;
      fraud += e.is_fraud ? 1 : 0;
    } else {
      ++own;
    }
  }
  std::map<std::string, std::int64_t> per_typology;
  for (const auto& i : r.instances) ++per_typology[std::string(to_string(i.typology))];
  const auto& b = r.budget;
  json leakage = json::object();
  for (const auto& [k, v] : b.counter_leakage) leakage[std::string(to_string(k))] = v;
  return {{"nodes", nodes},
          {"fraudulent_nodes", fraud_nodes},
          {"transaction_edges", tx},
          {"ownership_edges", own},
          {"fraud_edges", fraud},
          {"target_illicit_ratio", gcfg.target_illicit_ratio},
          {"achieved_illicit_ratio", tx > 0 ? static_cast<double>(fraud) / static_cast<double>(tx) : 0.0},
          {"instances", per_typology},
          {"budget",
           {{"total_target", b.total_target},
            {"background_target", b.background_target},
            {"random", b.random},
            {"salary", b.salary},
            {"high_value", b.high_value},
            {"fraudster", b.fraudster},
            {"counter_leakage", leakage},
            {"effective_daily_rate", b.effective_daily_rate},
            {"cap_binds", b.cap_binds},
            {"achievable_ratio", b.achievable_ratio}}},
          {"background_edges", r.background_counts},
          {"warnings", r.warnings}};
}

ExportManifest write_dataset(const GenerationResult& r, const GraphConfig& gcfg,
                             const PatternConfig& pcfg, const fs::path& dir) {
  ExportContext ctx;
  ctx.seed = gcfg.master_seed;
  ctx.graph_config_yaml = to_yaml(gcfg);
  ctx.pattern_config_yaml = to_yaml(pcfg);
  ctx.statistics = generation_statistics(r, gcfg);
  return export_dataset(r.graph, r.split, r.instances, dir, gcfg.output_formats, ctx);
}

DeterminismResult check_determinism(const GraphConfig& gcfg, const PatternConfig& pcfg,
                                    const fs::path& scratch, unsigned threads_a,
                                    unsigned threads_b) {
  DeterminismResult d;
  d.first = write_dataset(generate(gcfg, pcfg, threads_a), gcfg, pcfg, scratch / "run_a").files;
  d.second = write_dataset(generate(gcfg, pcfg, threads_b), gcfg, pcfg, scratch / "run_b").files;
  for (const auto& [name, hash] : d.first) {
    auto it = d.second.find(name);
    if (it == d.second.end() || it->second != hash) d.differing.push_back(name);
  }
  for (const auto& [name, _] : d.second) {
    if (!d.first.count(name)) d.differing.push_back(name);
  }
  d.identical = d.differing.empty();
  return d;
}

}  // namespace amlgen
