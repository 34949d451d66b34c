#include "amlgen/model.hpp"

#include <algorithm>
#include <cmath>

#include "amlgen/error.hpp"

namespace amlgen {

std::string_view to_string(NodeType t) {
  switch (t) {
    case NodeType::individual: return "individual";
    case NodeType::business: return "business";
    case NodeType::account: return "account";
    case NodeType::institution: return "institution";
    case NodeType::cash: return "cash";
  }
  return "?";
}

std::string_view to_string(AccountCategory c) {
  switch (c) {
    case AccountCategory::current: return "current";
    case AccountCategory::savings: return "savings";
    case AccountCategory::cash: return "cash";
  }
  return "?";
}

std::string_view to_string(AgeGroup a) {
  switch (a) {
    case AgeGroup::age_18_24: return "18-24";
    case AgeGroup::age_25_34: return "25-34";
    case AgeGroup::age_35_49: return "35-49";
    case AgeGroup::age_50_64: return "50-64";
    case AgeGroup::age_65_plus: return "65+";
  }
  return "?";
}

std::string_view to_string(Relation r) {
  return r == Relation::transaction ? "transaction" : "ownership";
}

std::optional<NodeType> parse_node_type(std::string_view s) {
  for (NodeType t : {NodeType::individual, NodeType::business, NodeType::account,
                     NodeType::institution, NodeType::cash}) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

std::optional<AgeGroup> parse_age_group(std::string_view s) {
  for (AgeGroup a : {AgeGroup::age_18_24, AgeGroup::age_25_34, AgeGroup::age_35_49,
                     AgeGroup::age_50_64, AgeGroup::age_65_plus}) {
    if (to_string(a) == s) return a;
  }
  return std::nullopt;
}

std::string_view to_string(ClusterId c) {
  switch (c) {
    case ClusterId::legit: return "legit";
    case ClusterId::high_risk_age: return "high_risk_age";
    case ClusterId::high_risk_occupation: return "high_risk_occupation";
    case ClusterId::high_risk_jurisdiction: return "high_risk_jurisdiction";
    case ClusterId::cash_intensive_business: return "cash_intensive_business";
    case ClusterId::very_small_company: return "very_small_company";
    case ClusterId::young_adult_18_24: return "young_adult_18_24";
    case ClusterId::elderly_65_plus: return "elderly_65_plus";
    case ClusterId::vulnerable_age_high_risk_jurisdiction:
      return "vulnerable_age+high_risk_jurisdiction";
    case ClusterId::occupation_high_risk_jurisdiction:
      return "high_risk_occupation+high_risk_jurisdiction";
    case ClusterId::cash_intensive_small_company:
      return "cash_intensive_business+very_small_company";
  }
  return "?";
}

std::optional<ClusterId> parse_cluster(std::string_view s) {
  for (ClusterId c : kAllClusters) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

namespace {

bool is_young(const IndividualAttrs& a) { return a.age_group == AgeGroup::age_18_24; }
bool is_elderly(const IndividualAttrs& a) { return a.age_group == AgeGroup::age_65_plus; }

bool is_very_small(const BusinessAttrs& b) {
  return b.number_of_employees <= kVerySmallCompanyEmployees;
}

}  // namespace

double risk_score(const EntityNode& entity, const RiskWeights& w) {
  double score = 0.0;
  if (const auto* ind = entity.individual()) {
    score = w.individual_base;
    if (is_young(*ind) || is_elderly(*ind)) score += w.high_risk_age;
    if (ind->high_risk_occupation) score += w.high_risk_occupation;
  } else if (const auto* biz = entity.business()) {
    score = w.business_base;
    if (biz->is_high_risk_category) score += w.cash_intensive_category;
    if (is_very_small(*biz)) score += w.very_small_company;
  } else {
    throw UnsupportedEntityType("risk_score: '" + entity.node_id + "' is a " +
                                std::string(to_string(entity.node_type)));
  }
  if (entity.high_risk_jurisdiction) score += w.high_risk_jurisdiction;
  return std::clamp(score, 0.0, w.cap);
}

std::set<ClusterId> assign_clusters(const EntityNode& entity) {
  std::set<ClusterId> out;
  const bool hrj = entity.high_risk_jurisdiction;
  if (const auto* ind = entity.individual()) {
    const bool young = is_young(*ind);
    const bool elderly = is_elderly(*ind);
    if (young) out.insert(ClusterId::young_adult_18_24);
    if (elderly) out.insert(ClusterId::elderly_65_plus);
    if (young || elderly) out.insert(ClusterId::high_risk_age);
    if (ind->high_risk_occupation) out.insert(ClusterId::high_risk_occupation);
    if ((young || elderly) && hrj) out.insert(ClusterId::vulnerable_age_high_risk_jurisdiction);
    if (ind->high_risk_occupation && hrj) out.insert(ClusterId::occupation_high_risk_jurisdiction);
  } else if (const auto* biz = entity.business()) {
    const bool cash = biz->is_high_risk_category;
    const bool small = is_very_small(*biz);
    if (cash) out.insert(ClusterId::cash_intensive_business);
    if (small) out.insert(ClusterId::very_small_company);
    if (cash && small) out.insert(ClusterId::cash_intensive_small_company);
  } else {
    throw UnsupportedEntityType("assign_clusters: '" + entity.node_id + "' is a " +
                                std::string(to_string(entity.node_type)));
  }
  if (hrj) out.insert(ClusterId::high_risk_jurisdiction);
  if (!entity.is_fraudulent) out.insert(ClusterId::legit);
  return out;
}

// ---------------------------------------------------------------------------

NodeIndex Graph::add_node(EntityNode node) {
  const auto index = static_cast<NodeIndex>(nodes_.size());
  auto [it, inserted] = by_id_.emplace(node.node_id, index);
  if (!inserted) throw ValidationError("duplicate node_id '" + node.node_id + "'");
  if (node.node_type == NodeType::institution) institutions_.push_back(index);
  nodes_.push_back(std::move(node));
  return index;
}

std::optional<NodeIndex> Graph::find(std::string_view node_id) const {
  auto it = by_id_.find(std::string(node_id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

void Graph::add_ownership(NodeIndex owner, NodeIndex owned) {
  if (owner >= nodes_.size() || owned >= nodes_.size()) {
    throw DanglingEndpoint("ownership edge references an unknown node");
  }
  const EntityNode& target = nodes_[owned];
  if (const auto* acc = target.account()) {
    if (acc->account_category == AccountCategory::cash) {
      cash_accounts_[owner] = owned;
    } else {
      accounts_[owner].push_back(owned);
    }
  } else if (target.node_type == NodeType::business) {
    businesses_[owner].push_back(owned);
  }
  TransactionEdge e;
  e.source = owner;
  e.target = owned;
  e.relation = Relation::ownership;
  e.amount = Money{};
  e.timestamp = window_.start;
  insert_transaction(e);
}

std::span<const NodeIndex> Graph::accounts_of(NodeIndex owner) const {
  auto it = accounts_.find(owner);
  if (it == accounts_.end()) return {};
  return it->second;
}

std::optional<NodeIndex> Graph::cash_account_of(NodeIndex owner) const {
  auto it = cash_accounts_.find(owner);
  if (it == cash_accounts_.end()) return std::nullopt;
  return it->second;
}

std::span<const NodeIndex> Graph::businesses_of(NodeIndex owner) const {
  auto it = businesses_.find(owner);
  if (it == businesses_.end()) return {};
  return it->second;
}

std::optional<NodeIndex> Graph::owner_of(NodeIndex account) const {
  if (account >= nodes_.size()) return std::nullopt;
  if (const auto* acc = nodes_[account].account()) return acc->owner;
  return std::nullopt;
}

void Graph::check_edge(const TransactionEdge& e) const {
  if (e.source >= nodes_.size() || e.target >= nodes_.size()) {
    throw DanglingEndpoint("edge references unknown node index " +
                           std::to_string(std::max(e.source, e.target)));
  }
  if (!window_.contains(e.timestamp)) {
    throw OutOfWindow("edge " + nodes_[e.source].node_id + " -> " + nodes_[e.target].node_id +
                      " at " + std::to_string(e.timestamp) + " lies outside the simulation window");
  }
}

EdgeId Graph::insert_transaction(TransactionEdge edge) {
  check_edge(edge);
  edge.edge_id = next_edge_id_++;
  edges_.push_back(edge);
  return edge.edge_id;
}

void Graph::append_edges(std::vector<TransactionEdge>&& edges) {
  for (const auto& e : edges) check_edge(e);
  edges_.reserve(edges_.size() + edges.size());
  for (auto& e : edges) {
    e.edge_id = next_edge_id_++;
    edges_.push_back(e);
  }
  edges.clear();
}

void Graph::remove_from_cluster(ClusterId c, NodeIndex n) {
  auto it = clusters_.find(c);
  if (it != clusters_.end()) it->second.erase(n);
}

void Graph::index_entity(NodeIndex n) {
  for (ClusterId c : assign_clusters(nodes_.at(n))) clusters_[c].insert(n);
}

const std::set<NodeIndex>& Graph::cluster(ClusterId c) const {
  auto it = clusters_.find(c);
  if (it == clusters_.end()) {
    throw UnknownCluster("cluster '" + std::string(to_string(c)) + "' is not indexed");
  }
  return it->second;
}

bool Graph::in_cluster(ClusterId c, NodeIndex n) const {
  auto it = clusters_.find(c);
  return it != clusters_.end() && it->second.count(n) > 0;
}

void Graph::mark_fraudulent(NodeIndex n) {
  EntityNode& node = nodes_.at(n);
  node.is_fraudulent = true;
  remove_from_cluster(ClusterId::legit, n);
}

// ---------------------------------------------------------------------------

std::vector<NodeIndex> select_from_cluster(const Graph& graph, ClusterId cluster, std::size_t k,
                                           const std::set<NodeIndex>& exclude, Rng& rng) {
  return select_from_cluster(graph, cluster, k, exclude, rng, nullptr);
}

std::vector<NodeIndex> weighted_select(const Graph& graph, std::vector<NodeIndex> pool,
                                       std::size_t k, Rng& rng) {
  if (k == 0) return {};
  auto by_risk_then_id = [&](NodeIndex a, NodeIndex b) {
    const auto& na = graph.node(a);
    const auto& nb = graph.node(b);
    if (na.risk_score != nb.risk_score) return na.risk_score > nb.risk_score;
    return na.node_id < nb.node_id;
  };
  if (k < pool.size()) {
    // Exponential race: key = E / w with E ~ Exp(1); the k smallest keys
    // form a weighted sample without replacement.
    std::vector<std::pair<double, NodeIndex>> keyed;
    keyed.reserve(pool.size());
    for (NodeIndex n : pool) {
      double u = rng.uniform();
      while (u <= 0.0) u = rng.uniform();
      const double weight = std::max(graph.node(n).risk_score, 1e-6);
      keyed.emplace_back(-std::log(u) / weight, n);
    }
    std::nth_element(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(k), keyed.end());
    pool.clear();
    for (std::size_t i = 0; i < k; ++i) pool.push_back(keyed[i].second);
  }
  std::sort(pool.begin(), pool.end(), by_risk_then_id);
  return pool;
}

std::vector<NodeIndex> select_from_cluster(const Graph& graph, ClusterId cluster, std::size_t k,
                                           const std::set<NodeIndex>& exclude, Rng& rng,
                                           const std::function<bool(NodeIndex)>& eligible) {
  const std::array one{cluster};
  return select_from_clusters(graph, one, k, exclude, rng, eligible);
}

std::vector<NodeIndex> select_from_clusters(const Graph& graph, std::span<const ClusterId> clusters,
                                            std::size_t k, const std::set<NodeIndex>& exclude,
                                            Rng& rng,
                                            const std::function<bool(NodeIndex)>& eligible) {
  std::vector<NodeIndex> pool;
  for (ClusterId c : clusters) {
    for (NodeIndex n : graph.cluster(c)) {
      if (exclude.count(n)) continue;
      if (eligible && !eligible(n)) continue;
      pool.push_back(n);
    }
  }
  if (k == 0) return {};
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  return weighted_select(graph, std::move(pool), k, rng);
}

}  // namespace amlgen
