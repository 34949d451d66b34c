#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "amlgen/config.hpp"
#include "amlgen/money.hpp"
#include "amlgen/rng.hpp"
#include "amlgen/time.hpp"
#include "amlgen/types.hpp"

namespace amlgen {

/// Dense position of a node in Graph::nodes().
using NodeIndex = std::uint32_t;
using EdgeId = std::uint64_t;

enum class NodeType : std::uint8_t { individual, business, account, institution, cash };
enum class AccountCategory : std::uint8_t { current, savings, cash };
enum class AgeGroup : std::uint8_t { age_18_24, age_25_34, age_35_49, age_50_64, age_65_plus };
enum class Relation : std::uint8_t { transaction, ownership };

std::string_view to_string(NodeType t);
std::string_view to_string(AccountCategory c);
std::string_view to_string(AgeGroup a);
std::string_view to_string(Relation r);
std::optional<NodeType> parse_node_type(std::string_view s);
std::optional<AgeGroup> parse_age_group(std::string_view s);

struct IndividualAttrs {
  std::string name;
  AgeGroup age_group = AgeGroup::age_35_49;
  std::string occupation;
  std::string gender;
  bool high_risk_occupation = false;
  bool high_paid = false;
};

struct BusinessAttrs {
  std::string business_category;
  int incorporation_year = 0;
  int number_of_employees = 0;
  bool is_high_risk_category = false;
  NodeIndex owner = 0;
};

struct AccountAttrs {
  AccountCategory account_category = AccountCategory::current;
  std::string currency;
  NodeIndex owner = 0;
  NodeIndex institution = 0;
  int creation_year = 0;
};

struct InstitutionAttrs {
  std::string institution_name;
};

struct EntityNode {
  std::string node_id;
  NodeType node_type = NodeType::individual;
  std::string country_code;
  /// Country is flagged high-risk in the run's country table.
  bool high_risk_jurisdiction = false;
  bool is_fraudulent = false;
  /// Internal selection variable; never exported.
  double risk_score = 0.0;
  std::variant<std::monostate, IndividualAttrs, BusinessAttrs, AccountAttrs, InstitutionAttrs>
      attrs;

  [[nodiscard]] bool is_entity() const {
    return node_type == NodeType::individual || node_type == NodeType::business;
  }
  [[nodiscard]] const IndividualAttrs* individual() const {
    return std::get_if<IndividualAttrs>(&attrs);
  }
  [[nodiscard]] const BusinessAttrs* business() const { return std::get_if<BusinessAttrs>(&attrs); }
  [[nodiscard]] const AccountAttrs* account() const { return std::get_if<AccountAttrs>(&attrs); }
  [[nodiscard]] const InstitutionAttrs* institution() const {
    return std::get_if<InstitutionAttrs>(&attrs);
  }
};

/// One element of E: either a dated transaction or a static ownership link.
struct TransactionEdge {
  EdgeId edge_id = 0;
  NodeIndex source = 0;
  NodeIndex target = 0;
  Relation relation = Relation::transaction;
  Category category = Category::transfer;
  bool is_fraud = false;
  Money amount;
  Timestamp timestamp = 0;
  /// Gap to the source's previous transaction; filled in at assembly.
  Seconds time_since_prev = 0;
};

// ---------------------------------------------------------------------------
// Clusters

enum class ClusterId : std::uint8_t {
  legit,
  high_risk_age,
  high_risk_occupation,
  high_risk_jurisdiction,
  cash_intensive_business,
  very_small_company,
  young_adult_18_24,
  elderly_65_plus,
  // composites
  vulnerable_age_high_risk_jurisdiction,
  occupation_high_risk_jurisdiction,
  cash_intensive_small_company,
};

inline constexpr std::array kAllClusters{
    ClusterId::legit,
    ClusterId::high_risk_age,
    ClusterId::high_risk_occupation,
    ClusterId::high_risk_jurisdiction,
    ClusterId::cash_intensive_business,
    ClusterId::very_small_company,
    ClusterId::young_adult_18_24,
    ClusterId::elderly_65_plus,
    ClusterId::vulnerable_age_high_risk_jurisdiction,
    ClusterId::occupation_high_risk_jurisdiction,
    ClusterId::cash_intensive_small_company,
};

std::string_view to_string(ClusterId c);
std::optional<ClusterId> parse_cluster(std::string_view s);

/// Businesses with at most this many employees count as very small.
inline constexpr int kVerySmallCompanyEmployees = 5;

/// Additive risk score clamped to the weights' cap. Throws UnsupportedEntityType
/// for accounts, institutions and the cash node.
double risk_score(const EntityNode& entity, const RiskWeights& weights);

/// Every cluster whose indicator holds for the entity; never empty.
/// Throws UnsupportedEntityType for non-entities.
std::set<ClusterId> assign_clusters(const EntityNode& entity);

// ---------------------------------------------------------------------------
// Graph

class Graph {
 public:
  explicit Graph(TimeWindow window) : window_(window) {}

  [[nodiscard]] TimeWindow window() const { return window_; }

  /// Throws ValidationError on a duplicate node_id.
  NodeIndex add_node(EntityNode node);

  [[nodiscard]] std::size_t node_count() const { return nodes_.size(); }
  [[nodiscard]] const EntityNode& node(NodeIndex i) const { return nodes_.at(i); }
  [[nodiscard]] EntityNode& node(NodeIndex i) { return nodes_.at(i); }
  [[nodiscard]] std::span<const EntityNode> nodes() const { return nodes_; }
  [[nodiscard]] std::optional<NodeIndex> find(std::string_view node_id) const;
  [[nodiscard]] const std::string& id(NodeIndex i) const { return nodes_[i].node_id; }

  [[nodiscard]] std::span<const NodeIndex> institutions() const { return institutions_; }

  void set_cash_node(NodeIndex i) { cash_node_ = i; }
  [[nodiscard]] std::optional<NodeIndex> cash_node() const { return cash_node_; }

  /// Records owner -> owned (account or business) with a zero-amount
  /// ownership edge dated at the window start.
  void add_ownership(NodeIndex owner, NodeIndex owned);

  /// Non-cash accounts held directly by the owner, in creation order.
  [[nodiscard]] std::span<const NodeIndex> accounts_of(NodeIndex owner) const;
  [[nodiscard]] std::optional<NodeIndex> cash_account_of(NodeIndex owner) const;
  /// Businesses owned by an individual.
  [[nodiscard]] std::span<const NodeIndex> businesses_of(NodeIndex owner) const;
  /// The individual or business behind an account; nullopt for non-accounts.
  [[nodiscard]] std::optional<NodeIndex> owner_of(NodeIndex account) const;

  /// Appends one edge, assigning the next edge_id. Throws DanglingEndpoint
  /// or OutOfWindow.
  EdgeId insert_transaction(TransactionEdge edge);
  /// Bulk variant; ids are assigned in sequence order.
  void append_edges(std::vector<TransactionEdge>&& edges);

  [[nodiscard]] const std::vector<TransactionEdge>& edges() const { return edges_; }
  [[nodiscard]] std::vector<TransactionEdge>& mutable_edges() { return edges_; }
  [[nodiscard]] EdgeId next_edge_id() const { return next_edge_id_; }

  // Cluster index

  /// Creates every cluster label with no members.
  void init_clusters() {
    for (ClusterId c : kAllClusters) clusters_[c];
  }
  void add_to_cluster(ClusterId c, NodeIndex n) { clusters_[c].insert(n); }
  void remove_from_cluster(ClusterId c, NodeIndex n);
  /// Recomputes and stores the clusters of one entity.
  void index_entity(NodeIndex n);
  [[nodiscard]] const std::set<NodeIndex>& cluster(ClusterId c) const;
  [[nodiscard]] bool in_cluster(ClusterId c, NodeIndex n) const;
  [[nodiscard]] const std::map<ClusterId, std::set<NodeIndex>>& clusters() const {
    return clusters_;
  }

  /// Marks an entity fraudulent and drops it from the legit cluster.
  void mark_fraudulent(NodeIndex n);

 private:
  void check_edge(const TransactionEdge& e) const;

  TimeWindow window_;
  std::vector<EntityNode> nodes_;
  std::unordered_map<std::string, NodeIndex> by_id_;
  std::vector<TransactionEdge> edges_;
  EdgeId next_edge_id_ = 0;
  std::optional<NodeIndex> cash_node_;
  std::vector<NodeIndex> institutions_;
  std::unordered_map<NodeIndex, std::vector<NodeIndex>> accounts_;
  std::unordered_map<NodeIndex, NodeIndex> cash_accounts_;
  std::unordered_map<NodeIndex, std::vector<NodeIndex>> businesses_;
  std::map<ClusterId, std::set<NodeIndex>> clusters_;
};

/// Draws up to k members of a cluster, skipping `exclude`.
///
/// Members are drawn without replacement with probability proportional to
/// their risk score (exponential race keyed by the rng). The result is
/// ordered by descending risk score, then ascending node_id. When k covers
/// every available member the rng is not consulted. Throws UnknownCluster
/// if the cluster has never been populated.
std::vector<NodeIndex> select_from_cluster(const Graph& graph, ClusterId cluster, std::size_t k,
                                           const std::set<NodeIndex>& exclude, Rng& rng);

/// As above with an additional eligibility predicate.
std::vector<NodeIndex> select_from_cluster(const Graph& graph, ClusterId cluster, std::size_t k,
                                           const std::set<NodeIndex>& exclude, Rng& rng,
                                           const std::function<bool(NodeIndex)>& eligible);

/// Selection over the union of several clusters.
std::vector<NodeIndex> select_from_clusters(const Graph& graph, std::span<const ClusterId> clusters,
                                            std::size_t k, const std::set<NodeIndex>& exclude,
                                            Rng& rng,
                                            const std::function<bool(NodeIndex)>& eligible = {});

/// Risk-weighted draw of k members from an explicit candidate list, ordered
/// like select_from_cluster.
std::vector<NodeIndex> weighted_select(const Graph& graph, std::vector<NodeIndex> pool,
                                       std::size_t k, Rng& rng);

}  // namespace amlgen
