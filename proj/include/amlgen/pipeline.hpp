#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "amlgen/assemble.hpp"
#include "amlgen/background.hpp"
#include "amlgen/config.hpp"
#include "amlgen/model.hpp"
#include "amlgen/patterns.hpp"

namespace amlgen {

struct GenerationResult {
  explicit GenerationResult(Graph g) : graph(std::move(g)) {}

  Graph graph;
  std::vector<PatternInstance> instances;
  BackgroundBudget budget;
  /// Edges actually emitted per background pattern.
  std::map<std::string, std::int64_t> background_counts;
  SplitIndex split;
  std::vector<std::string> warnings;
  std::int64_t fraud_edges = 0;
};

/// population -> patterns -> background -> merge -> split. The result does
/// not depend on `threads`.
GenerationResult generate(const GraphConfig& gcfg, const PatternConfig& pcfg, unsigned threads = 1);

/// Counts, ratios and budget figures recorded in the manifest.
nlohmann::json generation_statistics(const GenerationResult& r, const GraphConfig& gcfg);

/// Exports everything under `dir`. Throws IoError.
ExportManifest write_dataset(const GenerationResult& r, const GraphConfig& gcfg,
                             const PatternConfig& pcfg, const std::filesystem::path& dir);

struct DeterminismResult {
  bool identical = false;
  std::map<std::string, std::string> first;
  std::map<std::string, std::string> second;
  std::vector<std::string> differing;
};

/// Generates and exports twice under `scratch` (threads_a, then threads_b)
/// and compares file hashes.
DeterminismResult check_determinism(const GraphConfig& gcfg, const PatternConfig& pcfg,
                                    const std::filesystem::path& scratch, unsigned threads_a = 1,
                                    unsigned threads_b = 1);

}  // namespace amlgen
