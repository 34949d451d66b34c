#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "amlgen/config.hpp"
#include "amlgen/model.hpp"
#include "amlgen/rng.hpp"

namespace amlgen {

struct PopulationSummary {
  std::map<NodeType, std::size_t> node_counts;
  std::map<ClusterId, std::size_t> cluster_sizes;
  std::uint64_t seed_fingerprint = 0;
};

/// Builds individuals, businesses, institutions, the global cash node,
/// accounts with ownership edges, risk scores and the cluster index.
Graph generate_population(const GraphConfig& cfg, const RiskWeights& weights, const Rng& rng);

/// Creates n current/savings accounts for an owner at distinct institutions
/// where possible, plus the owner's cash account if it does not exist yet.
/// Returns the new non-cash accounts. Throws UnknownOwner.
std::vector<NodeIndex> attach_accounts(Graph& graph, NodeIndex owner, std::size_t n,
                                       const GraphConfig& cfg, Rng& rng);

PopulationSummary summarize(const Graph& graph, std::uint64_t seed);

/// True if the entity's country differs from the home country.
bool is_overseas(const Graph& graph, NodeIndex n, const std::string& home_country);

}  // namespace amlgen
