#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "amlgen/model.hpp"
#include "amlgen/patterns.hpp"

namespace amlgen {

/// Node facts the validator needs, indexed by NodeIndex.
struct NodeFacts {
  std::vector<std::string> node_id;
  std::vector<std::string> country;
  /// Institution id of accounts, empty otherwise.
  std::vector<std::string> institution;
};

NodeFacts node_facts(const Graph& graph);

/// One row of a typology's constraint table.
struct ConstraintSpec {
  std::string name;
  std::string description;
};

const std::vector<ConstraintSpec>& constraint_table(Typology t);

struct Violation {
  std::string constraint;
  std::string observed;
  std::string required;
};

struct InstanceReport {
  std::string key;
  Typology typology = Typology::overseas_transfers;
  std::vector<Violation> violations;
  [[nodiscard]] bool pass() const { return violations.empty(); }
};

/// Checks every constraint of the instance's typology against the ranges
/// recorded in params_used. Pure.
InstanceReport validate_instance(const PatternInstance& instance, const NodeFacts& facts);

struct CategoryStats {
  std::int64_t count = 0;
  double share = 0.0;
  double median = 0.0;
};

struct DatasetStats {
  std::int64_t transaction_edges = 0;
  std::int64_t ownership_edges = 0;
  std::int64_t fraud_edges = 0;
  double illicit_ratio = 0.0;
  /// (1 - ratio) / ratio; 0 when there is no fraud.
  double imbalance = 0.0;
  /// Over legitimate transaction edges.
  std::map<Category, CategoryStats> categories;
  /// Legitimate transaction edges with amount in [7000, 9999.99].
  double structuring_share = 0.0;
  /// Transaction edges whose endpoints are both fraud-labelled.
  double both_endpoint_fraud_fraction = 0.0;
  std::int64_t fraudulent_nodes = 0;

  [[nodiscard]] nlohmann::json to_json() const;
};

DatasetStats dataset_stats(const Graph& graph);
DatasetStats dataset_stats(const std::vector<TransactionEdge>& edges,
                           const std::vector<bool>& node_is_fraud);

struct ValidationReport {
  std::vector<InstanceReport> instances;
  DatasetStats stats;
  [[nodiscard]] bool pass() const;
  [[nodiscard]] std::size_t failures() const;
  [[nodiscard]] nlohmann::json to_json() const;
  [[nodiscard]] std::string to_text() const;
};

ValidationReport validate_dataset(const Graph& graph, const std::vector<PatternInstance>& instances);

/// Loaded export directory: edges by id, nodes by row, instances rebuilt
/// from patterns.json.
struct LoadedExport {
  NodeFacts facts;
  std::vector<bool> node_is_fraud;
  std::vector<TransactionEdge> edges;
  std::vector<PatternInstance> instances;
  nlohmann::json manifest;
};

/// Throws IoError, ParseError, UnknownTypology.
LoadedExport load_export(const std::filesystem::path& dir);
ValidationReport validate_export(const std::filesystem::path& dir);

}  // namespace amlgen
