#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <iostream>
#include <optional>
#include <string>

#include "amlgen/bench.hpp"
#include "amlgen/config.hpp"
#include "amlgen/error.hpp"
#include "amlgen/pipeline.hpp"
#include "amlgen/validate.hpp"

namespace fs = std::filesystem;
using namespace amlgen;

namespace {

struct ConfigFlags {
  std::string graph;
  std::string patterns;
  std::optional<std::uint64_t> seed;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& f) {
  cmd->add_option("--graph-config,-g", f.graph, "graph-level YAML")->required()->check(CLI::ExistingFile);
  cmd->add_option("--patterns-config,-p", f.patterns, "pattern-level YAML")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", f.seed, "override master_seed");
}

GraphConfig load_graph(const ConfigFlags& f) {
  try {
    return load_graph_config(f.graph);
  } catch (const MissingSeed&) {
    if (!f.seed) throw;
    std::ifstream in(f.graph);
    std::stringstream text;
    text << in.rdbuf() << "\nmaster_seed: " << *f.seed << "\n";
    return parse_graph_config(text.str());
  }
}

std::pair<GraphConfig, PatternConfig> load(const ConfigFlags& f) {
  GraphConfig g = load_graph(f);
  PatternConfig p = load_pattern_config(f.patterns);
  if (f.seed) g.master_seed = *f.seed;
  for (const auto& w : validate_combined(g, p)) std::cerr << "warning: " << w << "\n";
  return {g, p};
}

int run_generate(const ConfigFlags& cf, const std::string& out, unsigned threads,
                 const std::string& format, bool strict) {
  auto [g, p] = load(cf);
  if (strict) p.strict = true;
  if (format == "csv") g.output_formats = {true, false};
  if (format == "json") g.output_formats = {false, true};
  if (format == "all") g.output_formats = {true, true};
  const GenerationResult r = generate(g, p, threads);
  const ExportManifest m = write_dataset(r, g, p, out);
  const auto& s = m.json.at("statistics");
  std::cout << "seed " << g.master_seed << "\n"
            << "instances " << r.instances.size() << ", transaction edges "
            << s.at("transaction_edges").get<std::int64_t>() << ", fraud edges "
            << s.at("fraud_edges").get<std::int64_t>() << "\n"
            << "illicit ratio " << s.at("achieved_illicit_ratio").get<double>() << " (target "
            << g.target_illicit_ratio << ")\n"
            << "split train/val/test " << r.split.train << "/" << r.split.val << "/" << r.split.test
            << "\n";
  for (const auto& [name, hash] : m.files) std::cout << name << " " << hash << "\n";
  return 0;
}

int run_validate(const std::string& dir, const std::string& report_path) {
  const ValidationReport r = validate_export(dir);
  const fs::path out = report_path.empty() ? fs::path(dir) / "report.json" : fs::path(report_path);
  write_file_atomic(out, r.to_json().dump(2) + "\n");
  std::cout << r.to_text();
  return r.pass() ? 0 : 1;
}

int run_stats(const std::string& dir) {
  const LoadedExport ex = load_export(dir);
  const DatasetStats s = dataset_stats(ex.edges, ex.node_is_fraud);
  std::cout << s.to_json().dump(2) << "\n";
  if (ex.manifest.contains("statistics")) {
    const double recorded = ex.manifest["statistics"].value("achieved_illicit_ratio", -1.0);
    std::cout << "manifest illicit ratio " << recorded << ", recomputed " << s.illicit_ratio << "\n";
    if (std::abs(recorded - s.illicit_ratio) > 1e-12) {
      std::cerr << "error: illicit ratio does not match manifest.json\n";
      return 1;
    }
  }
  return 0;
}

int run_bench_cmd(const ConfigFlags& cf, const BenchOptions& opts, const std::string& out) {
  auto [g, p] = load(cf);
  g.output_formats = {false, false};
  const BenchReport rep = run_bench(g, p, opts);
  fs::create_directories(out);
  write_file_atomic(fs::path(out) / "bench.csv", rep.to_csv());
  write_file_atomic(fs::path(out) / "bench.json", rep.to_json().dump(2) + "\n");
  std::cout << rep.to_csv() << "alpha " << rep.fit.alpha << ", R^2 " << rep.fit.r2 << "\n";
  return 0;
}

int run_check_determinism(const ConfigFlags& cf, const std::string& scratch, unsigned a, unsigned b) {
  auto [g, p] = load(cf);
  const DeterminismResult d = check_determinism(g, p, scratch, a, b);
  for (const auto& [name, hash] : d.first) {
    const auto it = d.second.find(name);
    std::cout << name << " " << hash << " " << (it == d.second.end() ? "-" : it->second) << "\n";
  }
  std::cout << (d.identical ? "identical" : "DIFFERENT") << "\n";
  return d.identical ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic anti-money-laundering transaction graph generator"};
  app.require_subcommand(1);

  ConfigFlags gen_cf;
  std::string gen_out, gen_format = "config";
  unsigned gen_threads = 1;
  bool gen_strict = false;
  auto* gen = app.add_subcommand("generate", "generate and export a dataset");
  add_config_flags(gen, gen_cf);
  gen->add_option("--out,-o", gen_out, "output directory")->required();
  gen->add_option("--threads,-t", gen_threads, "worker threads")->check(CLI::Range(1u, 256u));
  gen->add_option("--format", gen_format, "csv, json, all or config")
      ->check(CLI::IsMember({"csv", "json", "all", "config"}));
  gen->add_flag("--strict", gen_strict, "abort when an instance cannot be placed");

  std::string val_dir, val_report;
  auto* val = app.add_subcommand("validate", "validate every instance of an export");
  val->add_option("--dir,-d", val_dir, "export directory")->required()->check(CLI::ExistingDirectory);
  val->add_option("--report", val_report, "report path (default <dir>/report.json)");

  std::string stats_dir;
  auto* stats = app.add_subcommand("stats", "dataset statistics of an export");
  stats->add_option("--dir,-d", stats_dir, "export directory")->required()->check(CLI::ExistingDirectory);

  ConfigFlags bench_cf;
  BenchOptions bench_opts;
  std::string bench_out = "bench_out";
  bool no_isolate = false;
  auto* bench = app.add_subcommand("bench", "scalability benchmark");
  add_config_flags(bench, bench_cf);
  bench->add_option("--scales", bench_opts.scales, "individual counts")->expected(2, -1);
  bench->add_option("--repeats", bench_opts.repeats)->check(CLI::PositiveNumber);
  bench->add_option("--threads,-t", bench_opts.threads)->check(CLI::Range(1u, 256u));
  bench->add_option("--instances-per-8k", bench_opts.instances_per_8k);
  bench->add_option("--out,-o", bench_out, "report directory");
  bench->add_flag("--no-isolate", no_isolate, "measure in-process");

  ConfigFlags det_cf;
  std::string det_scratch = "determinism_out";
  unsigned det_a = 1, det_b = 4;
  auto* det = app.add_subcommand("check-determinism", "generate twice and compare hashes");
  add_config_flags(det, det_cf);
  det->add_option("--out,-o", det_scratch, "scratch directory");
  det->add_option("--threads-a", det_a)->check(CLI::Range(1u, 256u));
  det->add_option("--threads-b", det_b)->check(CLI::Range(1u, 256u));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return run_generate(gen_cf, gen_out, gen_threads, gen_format, gen_strict);
    if (*val) return run_validate(val_dir, val_report);
    if (*stats) return run_stats(stats_dir);
    if (*bench) {
      bench_opts.isolate = !no_isolate;
      return run_bench_cmd(bench_cf, bench_opts, bench_out);
    }
    if (*det) return run_check_determinism(det_cf, det_scratch, det_a, det_b);
  } catch (const MissingSeed& e) {
    std::cerr << "error: " << e.what() << " (or pass --seed)\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
