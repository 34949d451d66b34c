#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "amlgen/config.hpp"

namespace amlgen {

struct BenchRow {
  std::int64_t individuals = 0;
  int repeat = 0;
  /// Nodes plus edges created.
  std::int64_t elements = 0;
  std::int64_t transactions = 0;
  double seconds = 0.0;
  std::int64_t peak_rss_bytes = 0;
  /// Thousands of elements per second.
  double throughput_keps = 0.0;
};

struct PowerFit {
  double alpha = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Least squares of log(time) on log(N).
PowerFit fit_power_law(const std::vector<double>& n, const std::vector<double>& seconds);

struct BenchReport {
  std::vector<BenchRow> rows;
  PowerFit fit;
  std::string memory_source;
  [[nodiscard]] nlohmann::json to_json() const;
  [[nodiscard]] std::string to_csv() const;
};

struct BenchOptions {
  std::vector<std::int64_t> scales{1000, 2000, 3500, 5000, 8000};
  int repeats = 1;
  unsigned threads = 1;
  /// Pattern instances in total at 8000 individuals, scaled linearly.
  double instances_per_8k = 90.0;
  /// Run each scale in a child process so peak memory is per scale.
  bool isolate = true;
};

/// Generates (without export) at each scale. Throws ValidationError with
/// fewer than two scales.
BenchReport run_bench(const GraphConfig& base, const PatternConfig& patterns,
                      const BenchOptions& opts);

}  // namespace amlgen
