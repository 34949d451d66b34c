#include "amlgen/bench.hpp"

#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "amlgen/error.hpp"
#include "amlgen/log.hpp"
#include "amlgen/pipeline.hpp"

namespace amlgen {

using nlohmann::json;

PowerFit fit_power_law(const std::vector<double>& n, const std::vector<double>& seconds) {
  if (n.size() != seconds.size() || n.size() < 2) {
    throw ValidationError("power-law fit needs at least two paired points");
  }
  const auto k = static_cast<double>(n.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> x, y;
  for (std::size_t i = 0; i < n.size(); ++i) {
    x.push_back(std::log(n[i]));
    y.push_back(std::log(seconds[i]));
    sx += x.back();
    sy += y.back();
    sxx += x.back() * x.back();
    sxy += x.back() * y.back();
  }
  PowerFit f;
  const double den = k * sxx - sx * sx;
  if (den == 0.0) throw ValidationError("power-law fit needs distinct sizes");
  f.alpha = (k * sxy - sx * sy) / den;
  f.intercept = (sy - f.alpha * sx) / k;
  const double mean = sy / k;
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (f.intercept + f.alpha * x[i]);
    ss_res += e * e;
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

json BenchReport::to_json() const {
  json rows_j = json::array();
  for (const auto& r : rows) {
    rows_j.push_back({{"individuals", r.individuals},
                      {"repeat", r.repeat},
                      {"elements", r.elements},
                      {"transactions", r.transactions},
                      {"seconds", r.seconds},
                      {"peak_rss_bytes", r.peak_rss_bytes},
                      {"throughput_keps", r.throughput_keps}});
  }
  return {{"rows", rows_j},
          {"alpha", fit.alpha},
          {"intercept", fit.intercept},
          {"r2", fit.r2},
          {"memory_source", memory_source}};
}

std::string BenchReport::to_csv() const {
  std::ostringstream o;
  o << "individuals,repeat,elements,transactions,seconds,peak_rss_bytes,throughput_keps\n";
  o.precision(9);
  for (const auto& r : rows) {
    o << r.individuals << "," << r.repeat << "," << r.elements << "," << r.transactions << ","
      << r.seconds << "," << r.peak_rss_bytes << "," << r.throughput_keps << "\n";
  }
  return o.str();
}

namespace {

struct Sample {
  double seconds = 0.0;
  std::int64_t elements = 0;
  std::int64_t transactions = 0;
};

Sample measure(const GraphConfig& g, const PatternConfig& p, unsigned threads) {
  const auto t0 = std::chrono::steady_clock::now();
  const GenerationResult r = generate(g, p, threads);
  const auto t1 = std::chrono::steady_clock::now();
  Sample s;
  s.seconds = std::chrono::duration<double>(t1 - t0).count();
  s.elements = static_cast<std::int64_t>(r.graph.node_count() + r.graph.edges().size());
  s.transactions = static_cast<std::int64_t>(r.split.assignment.size());
  return s;
}

PatternConfig scaled_patterns(PatternConfig p, std::int64_t individuals, double per_8k) {
  const double total = per_8k * static_cast<double>(individuals) / 8000.0;
  const auto each = std::max<std::int64_t>(1, std::llround(total / 5.0));
  p.overseas_transfers.instance_count = each;
  p.rapid_movement.instance_count = each;
  p.front_business.instance_count = each;
  p.synchronised.instance_count = each;
  p.u_turn.instance_count = each;
  return p;
}

bool run_isolated(const GraphConfig& g, const PatternConfig& p, unsigned threads, Sample& s,
                  std::int64_t& rss) {
  int fds[2];
  if (pipe(fds) != 0) return false;
  const pid_t pid = fork();
  if (pid < 0) {
    close(fds[0]);
    close(fds[1]);
    return false;
  }
  if (pid == 0) {
    close(fds[0]);
    int code = 0;
    try {
      const Sample out = measure(g, p, threads);
      if (write(fds[1], &out, sizeof out) != static_cast<ssize_t>(sizeof out)) code = 2;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "bench child failed: %s\n", e.what());
      code = 1;
    }
    close(fds[1]);
    _exit(code);
  }
  close(fds[1]);
  const ssize_t got = read(fds[0], &s, sizeof s);
  close(fds[0]);
  int status = 0;
  rusage ru{};
  wait4(pid, &status, 0, &ru);
  if (got != static_cast<ssize_t>(sizeof s) || !WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    throw Error("bench run failed in child process");
  }
  rss = static_cast<std::int64_t>(ru.ru_maxrss) * 1024;
  return true;
}

}  // namespace

BenchReport run_bench(const GraphConfig& base, const PatternConfig& patterns,
                      const BenchOptions& opts) {
  if (opts.scales.size() < 2) throw ValidationError("bench needs at least two scales");
  BenchReport rep;
  std::vector<double> ns, ts;
  for (std::int64_t scale : opts.scales) {
    GraphConfig g = base;
    g.individual_count = scale;
    const PatternConfig p = scaled_patterns(patterns, scale, opts.instances_per_8k);
    for (int k = 0; k < std::max(opts.repeats, 1); ++k) {
      Sample s;
      std::int64_t rss = 0;
      if (!(opts.isolate && run_isolated(g, p, opts.threads, s, rss))) {
        s = measure(g, p, opts.threads);
        rusage ru{};
        getrusage(RUSAGE_SELF, &ru);
        rss = static_cast<std::int64_t>(ru.ru_maxrss) * 1024;
        rep.memory_source = "getrusage(RUSAGE_SELF) high-water mark";
      } else if (rep.memory_source.empty()) {
        rep.memory_source = "wait4 ru_maxrss of a per-scale child";
      }
      BenchRow row;
      row.individuals = scale;
      row.repeat = k;
      row.elements = s.elements;
      row.transactions = s.transactions;
      row.seconds = s.seconds;
      row.peak_rss_bytes = rss;
      row.throughput_keps = s.seconds > 0 ? static_cast<double>(s.elements) / s.seconds / 1000.0 : 0.0;
      log::info("bench " + std::to_string(scale) + ": " + std::to_string(s.seconds) + "s, " +
                std::to_string(s.elements) + " elements");
      rep.rows.push_back(row);
      ns.push_back(static_cast<double>(s.elements));
      ts.push_back(s.seconds);
    }
  }
  rep.fit = fit_power_law(ns, ts);
  return rep;
}

}  // namespace amlgen
