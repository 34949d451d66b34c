#include "amlgen/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "amlgen/error.hpp"

namespace amlgen {

using nlohmann::json;
namespace fs = std::filesystem;

NodeFacts node_facts(const Graph& graph) {
  NodeFacts f;
  f.node_id.reserve(graph.node_count());
  f.country.reserve(graph.node_count());
  f.institution.reserve(graph.node_count());
  for (const auto& n : graph.nodes()) {
    f.node_id.push_back(n.node_id);
    f.country.push_back(n.country_code);
    const auto* a = n.account();
    f.institution.push_back(a && a->account_category != AccountCategory::cash
                                ? graph.id(a->institution)
                                : std::string());
  }
  return f;
}

const std::vector<ConstraintSpec>& constraint_table(Typology t) {
  static const std::vector<ConstraintSpec> common{
      {"fraud_label", "every transaction carries is_fraud"},
      {"chronological", "transactions are in timestamp order"},
  };
  static const std::vector<ConstraintSpec> layering{
      {"layering_hops", "intermediaries per leg within [h_min, h_max], or none when disabled"},
      {"layering_decay", "per-hop amount ratio within [decay_min, decay_max]"},
      {"layering_monotone", "amounts strictly decrease along each leg"},
      {"layering_delay", "inter-hop delay within [hop_delay_min, hop_delay_max]"},
      {"layering_contiguity", "each hop leaves the account the previous hop reached"},
      {"layering_distinct", "intermediaries distinct from each other and the endpoints"},
  };
  auto with = [&](std::vector<ConstraintSpec> own, bool layered) {
    std::vector<ConstraintSpec> v = common;
    if (layered) v.insert(v.end(), layering.begin(), layering.end());
    v.insert(v.end(), own.begin(), own.end());
    return v;
  };
  static const std::map<Typology, std::vector<ConstraintSpec>> tables{
      {Typology::overseas_transfers,
       with({{"transfer_count", "number of transfers within range"},
             {"transfer_amount", "each transfer amount within range"},
             {"destination_count", "distinct destination accounts within range"},
             {"destination_overseas", "every destination is outside the home country"},
             {"deposit_source_cash", "deposits come from the global cash node"},
             {"deposit_below_threshold", "every deposit is below the reporting threshold"},
             {"deposit_count", "cash deposits per transfer within range"},
             {"deposit_lead", "deposits precede their transfer by the configured lead"},
             {"burst_window", "burst timing: transfers within the burst window"},
             {"periodic_gap", "periodic timing: gaps within period +- epsilon"}},
            true)},
      {Typology::rapid_movement,
       with({{"source_count", "overseas sources within range and at least two"},
             {"source_overseas", "every source is outside the home country"},
             {"inflow_below_threshold", "every inflow amount below the reporting threshold"},
             {"inflow_window", "arrivals within the inflow window"},
             {"withdrawal_count", "withdrawal count within range"},
             {"withdrawal_delay", "first withdrawal follows the last arrival within range"},
             {"withdrawal_window", "withdrawals within the withdrawal window"},
             {"withdrawal_accounts", "withdrawals move beneficiary funds to its cash account"},
             {"outflow_ratio", "total withdrawn / total arrived within range"},
             {"max_duration", "first arrival to last withdrawal within the maximum duration"}},
            true)},
      {Typology::front_business,
       with({{"deposit_count", "cash deposits within range"},
             {"deposit_amount", "each deposit within range"},
             {"deposit_source_cash", "deposits come from the global cash node"},
             {"deposit_window", "deposits within the deposit window"},
             {"deposit_institutions", "deposits spread over accounts at two or more institutions"},
             {"transfer_pairing", "each deposit funds exactly one transfer"},
             {"transfer_delay", "transfer follows its deposit within range"},
             {"transfer_ratio", "transfer / deposit within range, per pair and in total"},
             {"destination_overseas", "every destination is outside the home country"},
             {"destination_countries", "destinations are in distinct countries"}},
            true)},
      {Typology::synchronised,
       with({{"coordinator_count", "coordinators within range"},
             {"coordinator_diversity", "no two coordinators share age group, occupation and country"},
             {"deposit_source_cash", "deposits come from the global cash node"},
             {"deposit_below_threshold", "every deposit below the reporting threshold"},
             {"deposits_per_coordinator", "deposits per coordinator within range"},
             {"sync_window", "all deposits within the synchronisation window"},
             {"transfer_delay", "transfer follows the coordinator's last deposit within range"},
             {"transfer_ratio", "transfer / deposited within range"},
             {"single_recipient", "all transfers reach one recipient account"},
             {"no_layering", "transfers are direct"}},
            false)},
      {Typology::u_turn,
       with({{"chain_entities", "entities on the chain within range"},
             {"initial_amount", "initial amount within range"},
             {"hop_fee", "each hop keeps (1 - fee) of the previous amount"},
             {"hop_delay", "delay between consecutive edges within range"},
             {"chain_contiguity", "each edge leaves the account the previous edge reached"},
             {"return_account", "the return lands on a different account of the source"},
             {"return_ratio_remaining", "returned / remaining within range"},
             {"return_ratio_initial", "returned / initial within range"},
             {"high_risk_intermediary", "at least one intermediary in a high-risk jurisdiction"}},
            false)},
  };
  return tables.at(t);
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string hours(Seconds s) { return fmt(static_cast<double>(s) / kHour) + "h"; }

IntRange int_range(const json& j) { return {j.at(0).get<std::int64_t>(), j.at(1).get<std::int64_t>()}; }
RealRange real_range(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }
DurationRange duration_range(const json& j) {
  return {j.at(0).get<Seconds>(), j.at(1).get<Seconds>()};
}
MoneyRange money_range(const json& j) {
  return {parse_money(j.at(0).get<std::string>()), parse_money(j.at(1).get<std::string>())};
}

/// num / den within [lo, hi], allowing one cent for rounding.
bool ratio_ok(Money num, Money den, const RealRange& r) {
  const double d = static_cast<double>(den.cents());
  const double n = static_cast<double>(num.cents());
  return n >= r.min * d - 1.0 && n <= r.max * d + 1.0;
}

double ratio(Money num, Money den) {
  return den.cents() == 0 ? 0.0 : static_cast<double>(num.cents()) / static_cast<double>(den.cents());
}

class Checker {
 public:
  explicit Checker(InstanceReport& r) : r_(r) {}

  void require(const std::string& name, bool ok, const std::string& observed,
               const std::string& required) {
    if (!ok && reported_.insert(name).second) r_.violations.push_back({name, observed, required});
  }
  void count(const std::string& name, std::int64_t v, const IntRange& range) {
    require(name, range.contains(v), std::to_string(v),
            "[" + std::to_string(range.min) + ", " + std::to_string(range.max) + "]");
  }
  void duration(const std::string& name, Seconds v, const DurationRange& range) {
    require(name, range.contains(v), hours(v), "[" + hours(range.min) + ", " + hours(range.max) + "]");
  }
  void at_most(const std::string& name, Seconds v, Seconds limit) {
    require(name, v <= limit, hours(v), "<= " + hours(limit));
  }
  void money(const std::string& name, Money v, const MoneyRange& range) {
    require(name, range.contains(v), v.str(), "[" + range.min.str() + ", " + range.max.str() + "]");
  }
  void below(const std::string& name, Money v, Money limit) {
    require(name, v < limit, v.str(), "< " + limit.str());
  }
  void ratio_in(const std::string& name, Money num, Money den, const RealRange& range) {
    require(name, ratio_ok(num, den, range), fmt(ratio(num, den)),
            "[" + fmt(range.min) + ", " + fmt(range.max) + "]");
  }

 private:
  InstanceReport& r_;
  std::set<std::string> reported_;
};

struct Leg {
  int id = -1;
  std::vector<const PatternTransaction*> edges;  // by step
  [[nodiscard]] const TransactionEdge& first() const { return edges.front()->edge; }
  [[nodiscard]] const TransactionEdge& last() const { return edges.back()->edge; }
};

std::vector<Leg> legs_of(const PatternInstance& inst) {
  std::map<int, Leg> legs;
  for (const auto& tx : inst.transactions) {
    if (tx.leg < 0) continue;
    auto& l = legs[tx.leg];
    l.id = tx.leg;
    l.edges.push_back(&tx);
  }
  std::vector<Leg> out;
  for (auto& [_, l] : legs) {
    std::sort(l.edges.begin(), l.edges.end(),
              [](const PatternTransaction* a, const PatternTransaction* b) { return a->step < b->step; });
    out.push_back(std::move(l));
  }
  return out;
}

std::vector<const PatternTransaction*> with_role(const PatternInstance& inst, const std::string& role) {
  std::vector<const PatternTransaction*> out;
  for (const auto& tx : inst.transactions) {
    if (tx.role == role) out.push_back(&tx);
  }
  return out;
}

std::vector<const PatternTransaction*> funding(const PatternInstance& inst, int leg) {
  std::vector<const PatternTransaction*> out;
  for (const auto& tx : inst.transactions) {
    if (tx.funds_leg == leg) out.push_back(&tx);
  }
  return out;
}

const std::vector<NodeIndex>& role(const PatternInstance& inst, const std::string& name) {
  static const std::vector<NodeIndex> kNone;
  auto it = inst.roles.find(name);
  return it == inst.roles.end() ? kNone : it->second;
}

template <class T>
std::pair<T, T> min_max(const std::vector<T>& v) {
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return {*lo, *hi};
}

void check_common(const PatternInstance& inst, Checker& c) {
  for (std::size_t i = 0; i < inst.transactions.size(); ++i) {
    const auto& e = inst.transactions[i].edge;
    c.require("fraud_label", e.is_fraud, "is_fraud=0 on edge " + std::to_string(e.edge_id), "is_fraud=1");
    if (i > 0) {
      const auto prev = inst.transactions[i - 1].edge.timestamp;
      c.require("chronological", prev <= e.timestamp,
                std::to_string(prev) + " > " + std::to_string(e.timestamp), "non-decreasing");
    }
  }
}

void check_layering(const PatternInstance& inst, const json& lp, Checker& c) {
  const bool enabled = lp.at("enabled").get<bool>();
  const IntRange h = int_range(lp.at("h"));
  const RealRange decay = real_range(lp.at("decay"));
  const DurationRange delay = duration_range(lp.at("hop_delay"));
  for (const Leg& leg : legs_of(inst)) {
    const auto hops = static_cast<std::int64_t>(leg.edges.size()) - 1;
    if (enabled) {
      c.count("layering_hops", hops, h);
    } else {
      c.count("layering_hops", hops, {0, 0});
    }
    std::set<NodeIndex> seen{leg.first().source};
    for (std::size_t k = 1; k < leg.edges.size(); ++k) {
      const auto& prev = leg.edges[k - 1]->edge;
      const auto& cur = leg.edges[k]->edge;
      c.ratio_in("layering_decay", cur.amount, prev.amount, decay);
      c.require("layering_monotone", cur.amount < prev.amount,
                cur.amount.str() + " after " + prev.amount.str(), "strictly decreasing");
      c.duration("layering_delay", cur.timestamp - prev.timestamp, delay);
      c.require("layering_contiguity", prev.target == cur.source,
                "edge " + std::to_string(cur.edge_id) + " breaks the chain", "contiguous path");
      c.require("layering_distinct", seen.insert(cur.source).second,
                "account repeated on edge " + std::to_string(cur.edge_id), "distinct intermediaries");
    }
    if (leg.edges.size() > 1) {
      c.require("layering_distinct", !seen.count(leg.last().target), "destination on its own path",
                "distinct intermediaries");
    }
  }
}

void check_overseas(const PatternInstance& inst, const json& p, const NodeFacts& f, Checker& c) {
  const Money threshold = parse_money(p.at("reporting_threshold").get<std::string>());
  const std::string home = p.at("home_country").get<std::string>();
  const auto legs = legs_of(inst);
  c.count("transfer_count", static_cast<std::int64_t>(legs.size()), int_range(p.at("transfers")));
  const MoneyRange amount = money_range(p.at("amount"));
  std::set<NodeIndex> dests;
  std::vector<Timestamp> starts;
  const DurationRange lead = duration_range(p.at("deposit_lead"));
  const IntRange per = int_range(p.at("deposits_per_transfer"));
  for (const Leg& leg : legs) {
    c.money("transfer_amount", leg.first().amount, amount);
    dests.insert(leg.last().target);
    starts.push_back(leg.first().timestamp);
    const auto deps = funding(inst, leg.id);
    c.count("deposit_count", static_cast<std::int64_t>(deps.size()), per);
    for (const auto* d : deps) {
      c.duration("deposit_lead", leg.first().timestamp - d->edge.timestamp, lead);
    }
  }
  c.count("destination_count", static_cast<std::int64_t>(dests.size()),
          int_range(p.at("destinations")));
  for (NodeIndex n : dests) {
    c.require("destination_overseas", f.country.at(n) != home, f.node_id.at(n) + " in " + home,
              "country != " + home);
  }
  for (NodeIndex n : role(inst, "destination")) {
    c.require("destination_overseas", f.country.at(n) != home, f.node_id.at(n) + " in " + home,
              "country != " + home);
  }
  const auto& cash = role(inst, "cash");
  for (const auto* d : with_role(inst, role::deposit)) {
    c.require("deposit_source_cash", !cash.empty() && d->edge.source == cash.front(),
              f.node_id.at(d->edge.source), "global cash node");
    c.below("deposit_below_threshold", d->edge.amount, threshold);
  }
  if (starts.empty()) return;
  std::sort(starts.begin(), starts.end());
  const std::string timing = p.at("timing").get<std::string>();
  if (timing == "burst") {
    c.at_most("burst_window", starts.back() - starts.front(), p.at("burst_window").get<Seconds>());
  } else {
    const Seconds period = p.at("period").get<Seconds>();
    const Seconds eps = p.at("epsilon").get<Seconds>();
    const auto periods = p.at("periods").get<std::vector<Seconds>>();
    c.require("periodic_gap", std::find(periods.begin(), periods.end(), period) != periods.end(),
              hours(period), "one of the configured periods");
    for (std::size_t i = 1; i < starts.size(); ++i) {
      c.duration("periodic_gap", starts[i] - starts[i - 1], {period - eps, period + eps});
    }
  }
}

void check_rapid(const PatternInstance& inst, const json& p, const NodeFacts& f, Checker& c) {
  const Money threshold = parse_money(p.at("reporting_threshold").get<std::string>());
  const std::string home = p.at("home_country").get<std::string>();
  const auto legs = legs_of(inst);
  const IntRange sources = int_range(p.at("sources"));
  c.count("source_count", static_cast<std::int64_t>(legs.size()),
          {std::max<std::int64_t>(sources.min, 2), sources.max});
  for (NodeIndex n : role(inst, "source")) {
    c.require("source_overseas", f.country.at(n) != home, f.node_id.at(n) + " in " + home,
              "country != " + home);
  }
  std::vector<Timestamp> arrivals;
  Money inflow;
  for (const Leg& leg : legs) {
    for (const auto* tx : leg.edges) c.below("inflow_below_threshold", tx->edge.amount, threshold);
    arrivals.push_back(leg.last().timestamp);
    inflow += leg.last().amount;
  }
  const auto wd = with_role(inst, role::withdrawal);
  c.count("withdrawal_count", static_cast<std::int64_t>(wd.size()), int_range(p.at("withdrawals")));
  if (arrivals.empty() || wd.empty()) return;
  const auto [a0, a1] = min_max(arrivals);
  c.at_most("inflow_window", a1 - a0, p.at("inflow_window").get<Seconds>());
  std::vector<Timestamp> wt;
  Money outflow;
  const auto& ben_accts = role(inst, "beneficiary_account");
  const auto& cash_acct = role(inst, "beneficiary_cash_account");
  for (const auto* w : wd) {
    wt.push_back(w->edge.timestamp);
    outflow += w->edge.amount;
    const bool ok = std::find(ben_accts.begin(), ben_accts.end(), w->edge.source) != ben_accts.end() &&
                    !cash_acct.empty() && w->edge.target == cash_acct.front();
    c.require("withdrawal_accounts", ok, "edge " + std::to_string(w->edge.edge_id),
              "beneficiary account -> beneficiary cash account");
  }
  const auto [w0, w1] = min_max(wt);
  c.duration("withdrawal_delay", w0 - a1, duration_range(p.at("withdrawal_delay")));
  c.at_most("withdrawal_window", w1 - w0, p.at("withdrawal_window").get<Seconds>());
  c.ratio_in("outflow_ratio", outflow, inflow, real_range(p.at("outflow_ratio")));
  c.at_most("max_duration", w1 - a0, p.at("max_duration").get<Seconds>());
}

void check_front(const PatternInstance& inst, const json& p, const NodeFacts& f, Checker& c) {
  const std::string home = p.at("home_country").get<std::string>();
  const auto deps = with_role(inst, role::deposit);
  c.count("deposit_count", static_cast<std::int64_t>(deps.size()), int_range(p.at("deposits")));
  const MoneyRange amount = money_range(p.at("deposit_amount"));
  const auto& cash = role(inst, "cash");
  std::vector<Timestamp> times;
  std::set<std::string> banks;
  for (const auto* d : deps) {
    c.money("deposit_amount", d->edge.amount, amount);
    c.require("deposit_source_cash", !cash.empty() && d->edge.source == cash.front(),
              f.node_id.at(d->edge.source), "global cash node");
    times.push_back(d->edge.timestamp);
    banks.insert(f.institution.at(d->edge.target));
  }
  if (!times.empty()) {
    const auto [t0, t1] = min_max(times);
    c.at_most("deposit_window", t1 - t0, p.at("deposit_window").get<Seconds>());
  }
  if (deps.size() >= 2) {
    c.require("deposit_institutions", banks.size() >= 2, std::to_string(banks.size()) + " institution(s)",
              ">= 2 institutions");
  }
  const auto legs = legs_of(inst);
  c.require("transfer_pairing", legs.size() == deps.size(),
            std::to_string(legs.size()) + " transfers for " + std::to_string(deps.size()) + " deposits",
            "one transfer per deposit");
  const DurationRange delay = duration_range(p.at("transfer_delay"));
  const RealRange tr = real_range(p.at("transfer_ratio"));
  Money dep_total;
  Money out_total;
  for (const Leg& leg : legs) {
    const auto src = funding(inst, leg.id);
    c.require("transfer_pairing", src.size() == 1, std::to_string(src.size()) + " funding deposits",
              "exactly one");
    if (src.size() != 1) continue;
    c.duration("transfer_delay", leg.first().timestamp - src.front()->edge.timestamp, delay);
    c.ratio_in("transfer_ratio", leg.first().amount, src.front()->edge.amount, tr);
    dep_total += src.front()->edge.amount;
    out_total += leg.first().amount;
  }
  if (dep_total.cents() > 0) c.ratio_in("transfer_ratio", out_total, dep_total, tr);
  std::set<std::string> countries;
  for (NodeIndex n : role(inst, "destination")) {
    c.require("destination_overseas", f.country.at(n) != home, f.node_id.at(n) + " in " + home,
              "country != " + home);
    c.require("destination_countries", countries.insert(f.country.at(n)).second,
              f.country.at(n) + " repeated", "distinct countries");
  }
  for (const Leg& leg : legs) {
    const NodeIndex t = leg.last().target;
    c.require("destination_overseas", f.country.at(t) != home, f.node_id.at(t) + " in " + home,
              "country != " + home);
  }
}

void check_synchronised(const PatternInstance& inst, const json& p, const NodeFacts& f, Checker& c) {
  const Money threshold = parse_money(p.at("reporting_threshold").get<std::string>());
  const auto& coords = role(inst, "coordinator");
  c.count("coordinator_count", static_cast<std::int64_t>(coords.size()), int_range(p.at("coordinators")));
  const auto& profiles = p.at("coordinator_profiles");
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    for (std::size_t j = i + 1; j < profiles.size(); ++j) {
      c.require("coordinator_diversity", profiles[i] != profiles[j],
                "coordinators " + std::to_string(i) + " and " + std::to_string(j) + " identical",
                "pairwise distinct profiles");
    }
  }
  const auto& cash = role(inst, "cash");
  std::vector<Timestamp> times;
  for (const auto* d : with_role(inst, role::deposit)) {
    c.require("deposit_source_cash", !cash.empty() && d->edge.source == cash.front(),
              f.node_id.at(d->edge.source), "global cash node");
    c.below("deposit_below_threshold", d->edge.amount, threshold);
    times.push_back(d->edge.timestamp);
  }
  if (!times.empty()) {
    const auto [t0, t1] = min_max(times);
    c.at_most("sync_window", t1 - t0, p.at("sync_window").get<Seconds>());
  }
  const IntRange per = int_range(p.at("deposits_per_coordinator"));
  const DurationRange delay = duration_range(p.at("transfer_delay"));
  const RealRange tr = real_range(p.at("transfer_ratio"));
  std::set<NodeIndex> recipients;
  const auto legs = legs_of(inst);
  for (const Leg& leg : legs) {
    c.require("no_layering", leg.edges.size() == 1, std::to_string(leg.edges.size()) + " edges",
              "1 edge");
    const auto deps = funding(inst, leg.id);
    c.count("deposits_per_coordinator", static_cast<std::int64_t>(deps.size()), per);
    if (deps.empty()) continue;
    Money total;
    Timestamp last = deps.front()->edge.timestamp;
    for (const auto* d : deps) {
      total += d->edge.amount;
      last = std::max(last, d->edge.timestamp);
    }
    c.duration("transfer_delay", leg.first().timestamp - last, delay);
    c.ratio_in("transfer_ratio", leg.first().amount, total, tr);
    recipients.insert(leg.last().target);
  }
  c.require("coordinator_count", legs.size() == coords.size(),
            std::to_string(legs.size()) + " transfers", "one per coordinator");
  c.require("single_recipient", recipients.size() <= 1, std::to_string(recipients.size()) + " accounts",
            "1 account");
}

void check_u_turn(const PatternInstance& inst, const json& p, const NodeFacts& f, Checker& c) {
  const auto& txs = inst.transactions;
  c.count("chain_entities", static_cast<std::int64_t>(txs.size()), int_range(p.at("chain_entities")));
  c.require("chain_entities", role(inst, "intermediary").size() + 1 == txs.size(),
            std::to_string(role(inst, "intermediary").size()) + " intermediaries",
            "one fewer than edges");
  if (txs.size() < 2) return;
  std::vector<const PatternTransaction*> chain;
  for (const auto& tx : txs) chain.push_back(&tx);
  std::sort(chain.begin(), chain.end(),
            [](const PatternTransaction* a, const PatternTransaction* b) { return a->step < b->step; });
  const Money initial = chain.front()->edge.amount;
  c.money("initial_amount", initial, money_range(p.at("initial_amount")));
  const RealRange fee = real_range(p.at("fee"));
  const RealRange keep{1.0 - fee.max, 1.0 - fee.min};
  const DurationRange delay = duration_range(p.at("hop_delay"));
  for (std::size_t k = 1; k < chain.size(); ++k) {
    const auto& prev = chain[k - 1]->edge;
    const auto& cur = chain[k]->edge;
    if (chain[k]->role == role::hop) c.ratio_in("hop_fee", cur.amount, prev.amount, keep);
    c.duration("hop_delay", cur.timestamp - prev.timestamp, delay);
    c.require("chain_contiguity", prev.target == cur.source,
              "edge " + std::to_string(cur.edge_id) + " breaks the chain", "contiguous path");
  }
  const auto& ret = *chain.back();
  const auto& origin = role(inst, "origin_account");
  const auto& ret_acct = role(inst, "return_account");
  c.require("return_account",
            ret.role == role::ret && !ret_acct.empty() && ret.edge.target == ret_acct.front() &&
                !origin.empty() && ret_acct.front() != origin.front() &&
                chain.front()->edge.source == origin.front(),
            "return to " + f.node_id.at(ret.edge.target), "a different account of the source");
  const RealRange rr = real_range(p.at("return_ratio"));
  c.ratio_in("return_ratio_remaining", ret.edge.amount, chain[chain.size() - 2]->edge.amount, rr);
  c.ratio_in("return_ratio_initial", ret.edge.amount, initial, rr);
  const auto hr = p.at("high_risk_countries").get<std::vector<std::string>>();
  bool any = false;
  for (NodeIndex n : role(inst, "intermediary")) {
    any = any || std::find(hr.begin(), hr.end(), f.country.at(n)) != hr.end();
  }
  c.require("high_risk_intermediary", any, "none", ">= 1");
}

}  // namespace

InstanceReport validate_instance(const PatternInstance& instance, const NodeFacts& facts) {
  InstanceReport r;
  r.key = instance.key();
  r.typology = instance.typology;
  Checker c(r);
  const json& p = instance.params_used;
  try {
    check_common(instance, c);
    if (p.contains("layering")) check_layering(instance, p.at("layering"), c);
    switch (instance.typology) {
      case Typology::overseas_transfers: check_overseas(instance, p, facts, c); break;
      case Typology::rapid_movement: check_rapid(instance, p, facts, c); break;
      case Typology::front_business: check_front(instance, p, facts, c); break;
      case Typology::synchronised: check_synchronised(instance, p, facts, c); break;
      case Typology::u_turn: check_u_turn(instance, p, facts, c); break;
      default: throw UnknownTypology("unknown typology");
    }
  } catch (const json::exception& e) {
    c.require("params_used", false, e.what(), "complete parameter record");
  }
  return r;
}

// ---------------------------------------------------------------------------

json DatasetStats::to_json() const {
  json cats = json::object();
  for (const auto& [c, s] : categories) {
    cats[std::string(to_string(c))] = {{"count", s.count}, {"share", s.share}, {"median", s.median}};
  }
  return {{"transaction_edges", transaction_edges},
          {"ownership_edges", ownership_edges},
          {"fraud_edges", fraud_edges},
          {"illicit_ratio", illicit_ratio},
          {"imbalance", imbalance},
          {"categories", cats},
          {"structuring_share", structuring_share},
          {"both_endpoint_fraud_fraction", both_endpoint_fraud_fraction},
          {"fraudulent_nodes", fraudulent_nodes}};
}

DatasetStats dataset_stats(const std::vector<TransactionEdge>& edges,
                           const std::vector<bool>& node_is_fraud) {
  DatasetStats s;
  std::map<Category, std::vector<std::int64_t>> amounts;
  std::int64_t legit = 0;
  std::int64_t structuring = 0;
  std::int64_t both = 0;
  for (const auto& e : edges) {
    if (e.relation != Relation::transaction) {
      ++s.ownership_edges;
      continue;
    }
    ++s.transaction_edges;
    if (node_is_fraud.at(e.source) && node_is_fraud.at(e.target)) ++both;
    if (e.is_fraud) {
      ++s.fraud_edges;
      continue;
    }
    ++legit;
    amounts[e.category].push_back(e.amount.cents());
    if (e.amount.cents() >= 700000 && e.amount.cents() <= 999999) ++structuring;
  }
  for (bool b : node_is_fraud) s.fraudulent_nodes += b ? 1 : 0;
  if (s.transaction_edges > 0) {
    s.illicit_ratio = static_cast<double>(s.fraud_edges) / static_cast<double>(s.transaction_edges);
    s.both_endpoint_fraud_fraction = static_cast<double>(both) / static_cast<double>(s.transaction_edges);
  }
  if (s.illicit_ratio > 0) s.imbalance = (1.0 - s.illicit_ratio) / s.illicit_ratio;
  if (legit > 0) s.structuring_share = static_cast<double>(structuring) / static_cast<double>(legit);
  for (auto& [c, v] : amounts) {
    CategoryStats cs;
    cs.count = static_cast<std::int64_t>(v.size());
    cs.share = static_cast<double>(cs.count) / static_cast<double>(legit);
    const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
    std::nth_element(v.begin(), mid, v.end());
    double med = static_cast<double>(*mid);
    if (v.size() % 2 == 0) {
      med = (med + static_cast<double>(*std::max_element(v.begin(), mid))) / 2.0;
    }
    cs.median = med / 100.0;
    s.categories[c] = cs;
  }
  return s;
}

DatasetStats dataset_stats(const Graph& graph) {
  std::vector<bool> fraud;
  fraud.reserve(graph.node_count());
  for (const auto& n : graph.nodes()) fraud.push_back(n.is_fraudulent);
  return dataset_stats(graph.edges(), fraud);
}

bool ValidationReport::pass() const { return failures() == 0; }

std::size_t ValidationReport::failures() const {
  return static_cast<std::size_t>(std::count_if(instances.begin(), instances.end(),
                                                [](const InstanceReport& r) { return !r.pass(); }));
}

json ValidationReport::to_json() const {
  json inst = json::array();
  for (const auto& r : instances) {
    json v = json::array();
    for (const auto& x : r.violations) {
      v.push_back({{"constraint", x.constraint}, {"observed", x.observed}, {"required", x.required}});
    }
    inst.push_back({{"key", r.key},
                    {"typology", std::string(to_string(r.typology))},
                    {"pass", r.pass()},
                    {"violations", v}});
  }
  return {{"pass", pass()},
          {"instances_checked", instances.size()},
          {"failures", failures()},
          {"instances", inst},
          {"dataset", stats.to_json()}};
}

std::string ValidationReport::to_text() const {
  std::ostringstream o;
  for (const auto& r : instances) {
    o << (r.pass() ? "PASS " : "FAIL ") << r.key << "\n";
    for (const auto& v : r.violations) {
      o << "  " << v.constraint << ": observed " << v.observed << ", required " << v.required << "\n";
    }
  }
  o << instances.size() << " instances, " << failures() << " failed\n";
  o << "transaction edges " << stats.transaction_edges << ", fraud edges " << stats.fraud_edges
    << ", illicit ratio " << fmt(stats.illicit_ratio) << "\n";
  for (const auto& [c, s] : stats.categories) {
    o << "  " << to_string(c) << ": share " << fmt(s.share) << ", median " << fmt(s.median) << "\n";
  }
  o << "structuring share " << fmt(stats.structuring_share) << ", both-endpoint-fraud fraction "
    << fmt(stats.both_endpoint_fraud_fraction) << "\n";
  return o.str();
}

ValidationReport validate_dataset(const Graph& graph, const std::vector<PatternInstance>& instances) {
  ValidationReport r;
  const NodeFacts f = node_facts(graph);
  for (const auto& inst : instances) r.instances.push_back(validate_instance(inst, f));
  r.stats = dataset_stats(graph);
  return r;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::ifstream open_in(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot read " + file.string());
  return in;
}

std::map<std::string, std::size_t> header_index(std::ifstream& in, const fs::path& file) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(file.string() + " is empty");
  std::map<std::string, std::size_t> idx;
  const auto cols = split_csv(line);
  for (std::size_t i = 0; i < cols.size(); ++i) idx[std::string(cols[i])] = i;
  return idx;
}

std::size_t col(const std::map<std::string, std::size_t>& idx, const std::string& name,
                const fs::path& file) {
  auto it = idx.find(name);
  if (it == idx.end()) throw ParseError(file.string() + " lacks column '" + name + "'");
  return it->second;
}

std::int64_t to_int(std::string_view s, const fs::path& file) {
  try {
    std::size_t used = 0;
    const std::string str(s);
    const long long v = std::stoll(str, &used);
    if (used != str.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ParseError(file.string() + ": bad integer '" + std::string(s) + "'");
  }
}

}  // namespace

LoadedExport load_export(const fs::path& dir) {
  LoadedExport out;
  std::unordered_map<std::string, NodeIndex> by_id;
  {
    const fs::path file = dir / "nodes.csv";
    auto in = open_in(file);
    const auto idx = header_index(in, file);
    const auto c_id = col(idx, "node_id", file);
    const auto c_country = col(idx, "country_code", file);
    const auto c_inst = col(idx, "institution_id", file);
    const auto c_fraud = col(idx, "is_fraudulent", file);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto f = split_csv(line);
      if (f.size() != idx.size()) throw ParseError(file.string() + ": malformed row '" + line + "'");
      by_id.emplace(std::string(f[c_id]), static_cast<NodeIndex>(out.facts.node_id.size()));
      out.facts.node_id.emplace_back(f[c_id]);
      out.facts.country.emplace_back(f[c_country]);
      out.facts.institution.emplace_back(f[c_inst]);
      out.node_is_fraud.push_back(f[c_fraud] == "1");
    }
  }
  auto node = [&](std::string_view id, const fs::path& file) {
    auto it = by_id.find(std::string(id));
    if (it == by_id.end()) throw ParseError(file.string() + ": unknown node '" + std::string(id) + "'");
    return it->second;
  };
  {
    const fs::path file = dir / "edges.csv";
    auto in = open_in(file);
    const auto idx = header_index(in, file);
    const auto c_id = col(idx, "edge_id", file);
    const auto c_src = col(idx, "source_id", file);
    const auto c_dst = col(idx, "target_id", file);
    const auto c_rel = col(idx, "relation", file);
    const auto c_amt = col(idx, "amount", file);
    const auto c_ts = col(idx, "timestamp", file);
    const auto c_dt = col(idx, "time_since_prev", file);
    const auto c_cat = col(idx, "category", file);
    const auto c_fraud = col(idx, "is_fraud", file);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto f = split_csv(line);
      if (f.size() != idx.size()) throw ParseError(file.string() + ": malformed row '" + line + "'");
      TransactionEdge e;
      e.edge_id = static_cast<EdgeId>(to_int(f[c_id], file));
      e.source = node(f[c_src], file);
      e.target = node(f[c_dst], file);
      e.relation = f[c_rel] == "ownership" ? Relation::ownership : Relation::transaction;
      e.amount = parse_money(std::string(f[c_amt]));
      e.timestamp = to_int(f[c_ts], file);
      e.time_since_prev = to_int(f[c_dt], file);
      if (e.relation == Relation::transaction) {
        const auto cat = parse_category(f[c_cat]);
        if (!cat) throw ParseError(file.string() + ": unknown category '" + std::string(f[c_cat]) + "'");
        e.category = *cat;
      }
      e.is_fraud = f[c_fraud] == "1";
      if (e.edge_id != out.edges.size()) {
        throw ParseError(file.string() + ": edge ids must be 0..n-1 in order");
      }
      out.edges.push_back(e);
    }
  }
  {
    const fs::path file = dir / "patterns.json";
    auto in = open_in(file);
    json records;
    try {
      records = json::parse(in);
    } catch (const json::exception& e) {
      throw ParseError(file.string() + ": " + e.what());
    }
    try {
      for (const auto& r : records) {
        PatternInstance inst;
        const auto name = r.at("typology").get<std::string>();
        const auto t = parse_typology(name);
        if (!t) throw UnknownTypology("unknown typology '" + name + "'");
        inst.typology = *t;
        inst.instance_id = r.at("instance_id").get<std::uint64_t>();
        for (const auto& [role_name, ids] : r.at("roles").items()) {
          auto& members = inst.roles[role_name];
          for (const auto& id : ids) members.push_back(node(id.get<std::string>(), file));
        }
        for (const auto& t2 : r.at("transactions")) {
          PatternTransaction tx;
          const auto id = t2.at("edge_id").get<EdgeId>();
          if (id >= out.edges.size()) throw ParseError(file.string() + ": unknown edge " + std::to_string(id));
          tx.edge = out.edges[id];
          tx.role = t2.at("role").get<std::string>();
          tx.leg = t2.at("leg").get<int>();
          tx.step = t2.at("step").get<int>();
          tx.funds_leg = t2.value("funds_leg", -1);
          inst.transactions.push_back(std::move(tx));
        }
        inst.params_used = r.at("params_used");
        out.instances.push_back(std::move(inst));
      }
    } catch (const json::exception& e) {
      throw ParseError(file.string() + ": " + e.what());
    }
  }
  if (fs::exists(dir / "manifest.json")) {
    auto in = open_in(dir / "manifest.json");
    try {
      out.manifest = json::parse(in);
    } catch (const json::exception& e) {
      throw ParseError("manifest.json: " + std::string(e.what()));
    }
  }
  return out;
}

ValidationReport validate_export(const fs::path& dir) {
  const LoadedExport ex = load_export(dir);
  ValidationReport r;
  for (const auto& inst : ex.instances) r.instances.push_back(validate_instance(inst, ex.facts));
  r.stats = dataset_stats(ex.edges, ex.node_is_fraud);
  return r;
}

}  // namespace amlgen
