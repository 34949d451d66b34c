#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "amlgen/config.hpp"
#include "amlgen/model.hpp"
#include "amlgen/rng.hpp"

namespace amlgen {

enum class Typology : std::uint8_t {
  overseas_transfers,
  rapid_movement,
  front_business,
  synchronised,
  u_turn
};

inline constexpr std::array kAllTypologies{Typology::overseas_transfers,
                                           Typology::rapid_movement, Typology::front_business,
                                           Typology::synchronised, Typology::u_turn};

std::string_view to_string(Typology t);
std::optional<Typology> parse_typology(std::string_view s);

/// Role tags carried by every pattern transaction.
namespace role {
inline constexpr const char* deposit = "deposit";
inline constexpr const char* transfer = "transfer";
inline constexpr const char* inflow = "inflow";
inline constexpr const char* withdrawal = "withdrawal";
inline constexpr const char* hop = "hop";
inline constexpr const char* ret = "return";
}  // namespace role

struct PatternTransaction {
  TransactionEdge edge;
  std::string role;
  /// Groups the edges of one (possibly layered) transfer; -1 for single edges.
  int leg = -1;
  /// Position inside the leg, 0 for the edge leaving the original sender.
  int step = 0;
  /// For deposits: the leg this cash funds; -1 otherwise.
  int funds_leg = -1;
};

struct PatternInstance {
  Typology typology = Typology::overseas_transfers;
  std::uint64_t instance_id = 0;
  std::map<std::string, std::vector<NodeIndex>> roles;
  /// Chronological; edge ids are valid once committed to the graph.
  std::vector<PatternTransaction> transactions;
  nlohmann::json params_used = nlohmann::json::object();

  [[nodiscard]] std::string key() const;
};

/// Candidate intermediary accounts for layering.
class IntermediaryPool {
 public:
  IntermediaryPool(const Graph& graph, LayeringPool kind);
  [[nodiscard]] std::span<const NodeIndex> accounts() const { return accounts_; }

 private:
  std::vector<NodeIndex> accounts_;
};

/// Routes one transfer through h intermediaries. With layering disabled the
/// single input edge is returned. The first edge leaves at `t` unless
/// `arrive_at` is set, in which case the chain is shifted so the last edge
/// lands exactly then. Throws PoolExhausted.
std::vector<TransactionEdge> apply_layering(const Graph& graph, const IntermediaryPool& pool,
                                            NodeIndex src, NodeIndex dst, Money amount,
                                            Timestamp t, const LayeringConfig& lp, Rng& rng,
                                            std::optional<Timestamp> arrive_at = std::nullopt);

/// Longest wall-clock span a layered leg can take.
Seconds max_layering_span(const LayeringConfig& lp);

/// Shared context for building instances of one typology.
struct PatternContext {
  const Graph& graph;
  const GraphConfig& graph_cfg;
  const PatternConfig& cfg;
  const IntermediaryPool& uniform_pool;
  const IntermediaryPool& high_risk_pool;
  /// Primary actors already used by this typology.
  std::set<NodeIndex> used;
};

PatternInstance inject_overseas_transfers(PatternContext& ctx, Rng& rng);
PatternInstance inject_rapid_movement(PatternContext& ctx, Rng& rng);
PatternInstance inject_front_business(PatternContext& ctx, Rng& rng);
PatternInstance inject_synchronised(PatternContext& ctx, Rng& rng);
PatternInstance inject_u_turn(PatternContext& ctx, Rng& rng);

struct InjectionResult {
  std::vector<PatternInstance> instances;
  std::vector<std::string> warnings;
  [[nodiscard]] std::size_t fraud_edge_count() const;
};

/// Builds every configured instance, commits the edges to the graph and
/// marks participants fraudulent. Instance i of typology T draws from
/// rng.derive("pattern/<T>", i). Typologies are built concurrently when
/// threads > 1; the result does not depend on the thread count.
InjectionResult inject_all(Graph& graph, const GraphConfig& gcfg, const PatternConfig& pcfg,
                           const Rng& rng, unsigned threads = 1);

/// Non-cash accounts controlled by an entity: its own plus those of
/// businesses it owns.
std::vector<NodeIndex> controlled_accounts(const Graph& graph, NodeIndex entity);

}  // namespace amlgen
