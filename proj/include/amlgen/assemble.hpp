#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "amlgen/config.hpp"
#include "amlgen/model.hpp"
#include "amlgen/patterns.hpp"

namespace amlgen {

/// Appends background edges, sorts every edge by (timestamp, edge_id),
/// renumbers edge ids to the sorted position and recomputes
/// time_since_prev. Instance edge ids are remapped to match.
void merge_and_finalize(Graph& graph, std::vector<PatternInstance>& instances,
                        std::vector<TransactionEdge>&& background);

/// Per-source inter-arrival gaps over transaction edges; the edges must
/// already be in chronological order. Ownership edges get 0.
void recompute_deltas(std::vector<TransactionEdge>& edges);

enum class SplitPart : std::uint8_t { train, val, test };
std::string_view to_string(SplitPart p);

struct SplitIndex {
  Timestamp t1 = 0;
  Timestamp t2 = 0;
  /// Transaction edge ids in chronological order with their part.
  std::vector<std::pair<EdgeId, SplitPart>> assignment;
  std::size_t train = 0;
  std::size_t val = 0;
  std::size_t test = 0;
};

/// Chronological floor(f_train*n) / floor(f_val*n) / remainder split of
/// transaction edges, ties broken by edge_id. t1 is the first validation
/// timestamp and t2 the first test timestamp. Throws TooFewEdges (n < 5).
SplitIndex temporal_split(const Graph& graph, double train_fraction = 0.6,
                          double val_fraction = 0.2);

inline constexpr std::array<std::string_view, 13> kNodeColumns{
    "node_id",         "node_type",      "country_code",       "account_category",
    "currency",        "owner_id",       "institution_id",     "age_group",
    "gender",          "incorporation_year", "number_of_employees", "creation_year",
    "is_fraudulent"};

inline constexpr std::array<std::string_view, 9> kEdgeColumns{
    "edge_id", "source_id", "target_id",       "relation", "amount",
    "timestamp", "time_since_prev", "category", "is_fraud"};

/// Internal generation attributes that must never be exported.
inline constexpr std::array<std::string_view, 10> kMaskedAttributes{
    "risk_score",     "occupation",         "business_category",     "name",
    "high_paid",      "high_risk_occupation", "is_high_risk_category", "high_risk_jurisdiction",
    "cluster",        "institution_name"};

struct ExportManifest {
  nlohmann::json json;
  /// File name -> lowercase hex SHA-256.
  std::map<std::string, std::string> files;
};

/// Everything the manifest records beyond file hashes.
struct ExportContext {
  std::uint64_t seed = 0;
  std::string graph_config_yaml;
  std::string pattern_config_yaml;
  nlohmann::json statistics = nlohmann::json::object();
};

/// Writes nodes.csv, edges.csv and splits.csv (csv format), patterns.json
/// (json format) and manifest.json. Every file is written to a temporary
/// name and renamed into place. Throws IoError.
ExportManifest export_dataset(const Graph& graph, const SplitIndex& split,
                              const std::vector<PatternInstance>& instances,
                              const std::filesystem::path& dir, const OutputFormats& formats,
                              const ExportContext& ctx);

/// One record per instance: typology, roles, ordered edge ids, params.
nlohmann::json pattern_metadata(const Graph& graph, const std::vector<PatternInstance>& instances);

/// Writes pattern_metadata() to a file. Returns its SHA-256. Throws IoError.
std::string export_pattern_metadata(const Graph& graph,
                                    const std::vector<PatternInstance>& instances,
                                    const std::filesystem::path& file);

std::string sha256_hex(std::string_view data);
/// Throws IoError.
std::string sha256_file(const std::filesystem::path& file);

/// Writes via a temporary sibling and rename. Throws IoError.
void write_file_atomic(const std::filesystem::path& file, std::string_view data);

}  // namespace amlgen
