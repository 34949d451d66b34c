// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "amlgen/background.hpp"
#include "amlgen/bench.hpp"
#include "amlgen/pipeline.hpp"
#include "amlgen/population.hpp"
#include "amlgen/validate.hpp"

using namespace amlgen;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

fs::path g_configs;
fs::path g_scratch;

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

GraphConfig desk_graph() { return load_graph_config(g_configs / "desk" / "graph.yaml"); }
PatternConfig desk_patterns() { return load_pattern_config(g_configs / "desk" / "patterns.yaml"); }

const GenerationResult& desk_run() {
  static const GenerationResult r = generate(desk_graph(), desk_patterns(), 4);
  return r;
}

std::vector<std::string> csv_header(const fs::path& file) {
  std::ifstream in(file);
  std::string line;
  std::getline(in, line);
  std::vector<std::string> cols;
  std::stringstream s(line);
  for (std::string c; std::getline(s, c, ',');) cols.push_back(c);
  return cols;
}

void collect_keys(const nlohmann::json& j, std::set<std::string>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      out.insert(it.key());
      collect_keys(it.value(), out);
    }
  } else if (j.is_array()) {
    for (const auto& v : j) collect_keys(v, out);
  }
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Two-sample Kolmogorov-Smirnov statistic and asymptotic p-value.
std::pair<double, double> ks_test(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double n = static_cast<double>(a.size()), m = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  const double en = std::sqrt(n * m / (n + m));
  const double lambda = (en + 0.12 + 0.11 / en) * d;
  double p = 0.0;
  for (int k = 1; k <= 100; ++k) {
    p += 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
  }
  return {d, std::clamp(p, 0.0, 1.0)};
}

// ---------------------------------------------------------------------------

Outcome determinism() {
  const GraphConfig g = desk_graph();
  const PatternConfig p = desk_patterns();
  const auto t0 = std::chrono::steady_clock::now();
  write_dataset(generate(g, p, 1), g, p, g_scratch / "timed");
  const double single = seconds_since(t0);
  const DeterminismResult d = check_determinism(g, p, g_scratch / "determinism", 1, 4);
  const DeterminismResult same = check_determinism(g, p, g_scratch / "determinism_same", 1, 1);
  GraphConfig other = g;
  other.master_seed += 1;
  const auto alt = write_dataset(generate(other, p, 1), other, p, g_scratch / "other_seed").files;
  const bool seed_matters = alt.at("edges.csv") != d.first.at("edges.csv");
  std::set<std::string> need{"nodes.csv", "edges.csv", "splits.csv", "patterns.json"};
  bool all_present = true;
  for (const auto& f : need) all_present = all_present && d.first.count(f) && d.second.count(f);
  Outcome o;
  o.pass = d.identical && same.identical && all_present && seed_matters && single <= 60.0;
  o.detail = std::string("threads 1 vs 4 ") + (d.identical ? "identical" : "DIFFERENT") +
             ", repeat " + (same.identical ? "identical" : "DIFFERENT") + ", seed+1 " +
             (seed_matters ? "differs" : "SAME") + fmt(", single run %.2fs (limit 60s)", single);
  return o;
}

Outcome structural() {
  GraphConfig g = desk_graph();
  g.individual_count = 3000;
  g.simulation_end = Date{std::chrono::sys_days{std::chrono::year{2025} / 6 / 30}};
  PatternConfig p = desk_patterns();
  p.overseas_transfers.instance_count = 12;
  p.rapid_movement.instance_count = 12;
  p.front_business.instance_count = 12;
  p.synchronised.instance_count = 12;
  p.u_turn.instance_count = 12;
  const GenerationResult r = generate(g, p, 4);
  const ValidationReport rep = validate_dataset(r.graph, r.instances);
  std::map<Typology, int> per;
  for (const auto& i : r.instances) ++per[i.typology];
  int min_per = 1 << 30;
  for (Typology t : kAllTypologies) min_per = std::min(min_per, per[t]);
  Outcome o;
  o.pass = min_per >= 10 && rep.failures() == 0;
  o.detail = std::to_string(r.instances.size()) + " instances, min " + std::to_string(min_per) +
             " per typology, " + std::to_string(rep.failures()) + " failing";
  return o;
}

Outcome illicit_ratio() {
  const GenerationResult& r = desk_run();
  const DatasetStats s = dataset_stats(r.graph);
  const double target = desk_graph().target_illicit_ratio;
  const double rel = std::abs(s.illicit_ratio - target) / target;
  Outcome o;
  o.pass = !r.budget.cap_binds && rel <= 0.20;
  o.detail = fmt("achieved %.6f vs target %.6f (%.1f%% off, limit 20%%)", s.illicit_ratio, target,
                 100.0 * rel) +
             (r.budget.cap_binds ? ", cap binds" : ", cap does not bind");
  return o;
}

Outcome amount_medians() {
  const AmountModel model = amount_model(default_graph_config());
  Rng rng = Rng(20251).derive("acceptance/amounts");
  Outcome o{true, ""};
  for (AmountKind k : {AmountKind::payment, AmountKind::transfer, AmountKind::withdrawal,
                       AmountKind::deposit}) {
    std::vector<double> xs;
    xs.reserve(100000);
    for (int i = 0; i < 100000; ++i) xs.push_back(sample_amount(k, model, rng).units());
    const double med = median(xs);
    const double want = std::exp(model.params.at(k).mu);
    const double rel = std::abs(med - want) / want;
    o.pass = o.pass && rel <= 0.05;
    o.detail += std::string(o.detail.empty() ? "" : "; ") + std::string(to_string(k)) +
                fmt(" %.2f vs %.2f", med, want);
  }
  return o;
}

struct RandomSample {
  std::vector<TransactionEdge> edges;
};

const RandomSample& random_sample() {
  static const RandomSample s = [] {
    const GenerationResult& r = desk_run();
    Rng pool_rng(7);
    const AccountPools pools = build_account_pools(r.graph, desk_graph(), pool_rng);
    return RandomSample{
        generate_random_payments(r.graph, desk_graph(), pools, 200000, Rng(99).derive("acceptance"), 4)};
  }();
  return s;
}

Outcome frequencies() {
  const auto& edges = random_sample().edges;
  const GraphConfig g = desk_graph();
  const auto norm = g.normalized_background_weights();
  std::map<Category, double> counts;
  for (const auto& e : edges) counts[e.category] += 1.0;
  Outcome o{edges.size() >= 100000, ""};
  for (const auto& [cat, w] : g.background_weights) {
    const double share = counts[cat] / static_cast<double>(edges.size());
    const double off = std::max(std::abs(share - w), std::abs(share - norm.at(cat)));
    o.pass = o.pass && off <= 0.03;
    o.detail += std::string(o.detail.empty() ? "" : "; ") + std::string(to_string(cat)) +
                fmt(" %.3f vs %.3f", share, w);
  }
  o.detail += " (" + std::to_string(edges.size()) + " edges)";
  return o;
}

Outcome structuring() {
  const auto& edges = random_sample().edges;
  const double n = static_cast<double>(edges.size());
  double k = 0;
  for (const auto& e : edges) k += e.amount.cents() >= 700000 && e.amount.cents() <= 999999;
  const double p = k / n;
  // One-sided z tests against each end of [3%, 5%] at alpha 0.01.
  const double z_hi = (p - 0.05) / std::sqrt(0.05 * 0.95 / n);
  const double z_lo = (0.03 - p) / std::sqrt(0.03 * 0.97 / n);
  const double crit = 2.326;
  Outcome o;
  o.pass = n >= 100000 && z_hi < crit && z_lo < crit;
  o.detail = fmt("share %.4f over %.0f random payments (z above 5%%: %.2f, z below 3%%: %.2f)", p, n,
                 z_hi, z_lo);
  return o;
}

Outcome split() {
  const GenerationResult& r = desk_run();
  const SplitIndex& s = r.split;
  const auto n = s.assignment.size();
  Timestamp max_train = 0, min_val = INT64_MAX, max_val = 0, min_test = INT64_MAX;
  std::size_t tx = 0;
  for (const auto& e : r.graph.edges()) tx += e.relation == Relation::transaction;
  bool ordered = true;
  Timestamp prev = INT64_MIN;
  for (const auto& [id, part] : s.assignment) {
    const Timestamp t = r.graph.edges()[id].timestamp;
    ordered = ordered && t >= prev;
    prev = t;
    if (part == SplitPart::train) max_train = std::max(max_train, t);
    if (part == SplitPart::val) {
      min_val = std::min(min_val, t);
      max_val = std::max(max_val, t);
    }
    if (part == SplitPart::test) min_test = std::min(min_test, t);
  }
  const bool counts = n == tx && s.train == n * 6 / 10 && s.val == n * 2 / 10 &&
                      s.test == n - s.train - s.val;
  const bool bounds = max_train <= s.t1 && s.t1 <= min_val && max_val <= s.t2 && s.t2 <= min_test;
  Outcome o;
  o.pass = counts && bounds && ordered;
  o.detail = std::to_string(s.train) + "/" + std::to_string(s.val) + "/" + std::to_string(s.test) +
             " of " + std::to_string(n) + (bounds ? ", boundaries hold" : ", BOUNDARIES VIOLATED");
  return o;
}

Outcome schema() {
  const fs::path dir = g_scratch / "schema";
  write_dataset(desk_run(), desk_graph(), desk_patterns(), dir);
  const auto nodes = csv_header(dir / "nodes.csv");
  const auto edges = csv_header(dir / "edges.csv");
  std::vector<std::string> diff;
  auto compare = [&](const std::vector<std::string>& got, const auto& want, const std::string& file) {
    const std::set<std::string> g(got.begin(), got.end());
    std::set<std::string> w;
    for (auto c : want) w.insert(std::string(c));
    for (const auto& c : g) {
      if (!w.count(c)) diff.push_back("+" + file + ":" + c);
    }
    for (const auto& c : w) {
      if (!g.count(c)) diff.push_back("-" + file + ":" + c);
    }
  };
  compare(nodes, kNodeColumns, "nodes.csv");
  compare(edges, kEdgeColumns, "edges.csv");
  std::set<std::string> keys(nodes.begin(), nodes.end());
  keys.insert(edges.begin(), edges.end());
  std::ifstream pj(dir / "patterns.json");
  collect_keys(nlohmann::json::parse(pj), keys);
  for (auto m : kMaskedAttributes) {
    if (keys.count(std::string(m))) diff.push_back("masked:" + std::string(m));
  }
  Outcome o;
  o.pass = diff.empty();
  o.detail = diff.empty() ? "schema diff empty, no masked attribute exported" : "diff:";
  for (const auto& d : diff) o.detail += " " + d;
  return o;
}

Outcome indistinguishability() {
  const GenerationResult& r = desk_run();
  const GraphConfig g = desk_graph();
  Rng pool_rng(7);
  const AccountPools pools = build_account_pools(r.graph, g, pool_rng);
  const std::int64_t days = r.graph.window().days();
  const double rate = std::ceil(20000.0 / static_cast<double>(pools.fraud.size())) /
                      static_cast<double>(days);
  Rng fr = Rng(31).derive("acceptance/fraudster");
  const auto fraudster = generate_fraudster_background(r.graph, g, pools, rate, days, fr);
  std::vector<double> a, b;
  for (const auto& e : fraudster) {
    if (e.category == Category::payment && a.size() < 10000) a.push_back(e.amount.units());
  }
  for (const auto& e : random_sample().edges) {
    if (e.category == Category::payment && b.size() < 10000) b.push_back(e.amount.units());
  }
  const auto [d, p] = ks_test(a, b);
  Outcome o;
  o.pass = a.size() == 10000 && b.size() == 10000 && p > 0.01;
  o.detail = fmt("KS D=%.4f p=%.3f over %.0f fraudster vs %.0f legitimate payments", d, p,
                 static_cast<double>(a.size()), static_cast<double>(b.size()));
  return o;
}

Outcome scalability() {
  const GraphConfig g = load_graph_config(g_configs / "graph.yaml");
  const PatternConfig p = load_pattern_config(g_configs / "patterns.yaml");
  BenchOptions opts;
  opts.threads = 1;
  opts.instances_per_8k = static_cast<double>(p.total_instances());
  const BenchReport rep = run_bench(g, p, opts);
  fs::create_directories(g_scratch / "bench");
  std::ofstream(g_scratch / "bench" / "bench.csv") << rep.to_csv();
  double total = 0;
  std::string rows;
  for (const auto& row : rep.rows) {
    total += row.seconds;
    rows += " " + std::to_string(row.individuals) + fmt(":%.2fs", row.seconds);
  }
  Outcome o;
  o.pass = rep.rows.size() >= 4 && rep.fit.alpha <= 1.5 && rep.fit.r2 >= 0.9;
  o.detail = fmt("alpha %.3f, R^2 %.3f, total %.1fs;", rep.fit.alpha, rep.fit.r2, total) + rows;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  g_configs = argc > 1 ? fs::path(argv[1]) : fs::path("configs");
  g_scratch = argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path() / "amlgen_acceptance";
  fs::remove_all(g_scratch);
  fs::create_directories(g_scratch);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"determinism", determinism},
      {"structural validation", structural},
      {"illicit-ratio targeting", illicit_ratio},
      {"amount calibration", amount_medians},
      {"frequency calibration", frequencies},
      {"structuring overlay", structuring},
      {"split correctness", split},
      {"anti-leakage schema", schema},
      {"fraudster-background indistinguishability", indistinguishability},
      {"scalability", scalability},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
