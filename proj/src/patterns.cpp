#include "amlgen/patterns.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <thread>

#include "amlgen/error.hpp"
#include "amlgen/schedule.hpp"

namespace amlgen {

using nlohmann::json;

std::string_view to_string(Typology t) {
  switch (t) {
    case Typology::overseas_transfers: return "overseas_transfers";
    case Typology::rapid_movement: return "rapid_movement";
    case Typology::front_business: return "front_business";
    case Typology::synchronised: return "synchronised";
    case Typology::u_turn: return "u_turn";
  }
  return "?";
}

std::optional<Typology> parse_typology(std::string_view s) {
  for (Typology t : kAllTypologies) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

std::string PatternInstance::key() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s/%04llu", std::string(to_string(typology)).c_str(),
                static_cast<unsigned long long>(instance_id));
  return buf;
}

std::size_t InjectionResult::fraud_edge_count() const {
  std::size_t n = 0;
  for (const auto& i : instances) n += i.transactions.size();
  return n;
}

namespace {

constexpr std::array kIntermediaryClusters{
    ClusterId::high_risk_age, ClusterId::high_risk_occupation, ClusterId::high_risk_jurisdiction,
    ClusterId::cash_intensive_business, ClusterId::very_small_company};

/// Cash deposits made ahead of each overseas transfer.
constexpr IntRange kDepositsPerTransfer{1, 3};

json range_json(const IntRange& r) { return json::array({r.min, r.max}); }
json range_json(const RealRange& r) { return json::array({r.min, r.max}); }
json range_json(const DurationRange& r) { return json::array({r.min, r.max}); }
json range_json(const MoneyRange& r) { return json::array({r.min.str(), r.max.str()}); }

json layering_json(const LayeringConfig& l) {
  return {{"enabled", l.enabled},
          {"h", json::array({l.h_min, l.h_max})},
          {"decay", json::array({l.decay_min, l.decay_max})},
          {"hop_delay", json::array({l.hop_delay_min, l.hop_delay_max})},
          {"pool", std::string(to_string(l.pool))}};
}

json common_params(const PatternContext& ctx) {
  json hr = json::array();
  for (const auto& c : ctx.graph_cfg.country_table) {
    if (c.high_risk) hr.push_back(c.code);
  }
  return {{"home_country", ctx.graph_cfg.home_country},
          {"high_risk_countries", hr},
          {"reporting_threshold", ctx.graph_cfg.reporting_threshold.str()},
          {"sub_threshold", range_json(ctx.cfg.sub_threshold)}};
}

Money uniform_money(Rng& rng, const MoneyRange& r) {
  return Money::from_cents(rng.uniform_int(r.min.cents(), r.max.cents()));
}

Money sub_threshold(Rng& rng, Money threshold, const RealRange& frac) {
  const double f = frac.min == frac.max ? frac.min : rng.uniform(frac.min, frac.max);
  auto cents = static_cast<std::int64_t>(std::floor(static_cast<double>(threshold.cents()) * f));
  cents = std::clamp<std::int64_t>(cents, 1, std::max<std::int64_t>(threshold.cents() - 1, 1));
  return Money::from_cents(cents);
}

double uniform_real(Rng& rng, const RealRange& r) {
  return r.min == r.max ? r.min : rng.uniform(r.min, r.max);
}

Seconds uniform_duration(Rng& rng, const DurationRange& r) { return rng.uniform_int(r.min, r.max); }

/// Splits a total into m positive parts that sum exactly.
std::vector<Money> split_amount(Money total, std::size_t m, Rng& rng) {
  std::vector<double> w(m);
  double sum = 0.0;
  for (auto& x : w) sum += (x = rng.uniform(0.5, 1.5));
  std::vector<Money> out;
  std::int64_t left = total.cents();
  for (std::size_t i = 0; i + 1 < m; ++i) {
    auto c = static_cast<std::int64_t>(std::floor(static_cast<double>(total.cents()) * w[i] / sum));
    c = std::max<std::int64_t>(c, 1);
    out.push_back(Money::from_cents(c));
    left -= c;
  }
  out.push_back(Money::from_cents(left));
  return out;
}

Timestamp place(const TimeWindow& w, Seconds lead, Seconds span, Rng& rng) {
  const Timestamp lo = w.start + lead;
  const Timestamp hi = w.end - 1 - span;
  if (hi < lo) {
    throw InvalidWindow("pattern needs " + std::to_string((lead + span) / kHour) +
                        "h but the simulation window is " + std::to_string(w.length() / kHour) +
                        "h");
  }
  return rng.uniform_int(lo, hi);
}

TransactionEdge make_edge(NodeIndex s, NodeIndex t, Money a, Timestamp ts, Category c) {
  TransactionEdge e;
  e.source = s;
  e.target = t;
  e.relation = Relation::transaction;
  e.category = c;
  e.is_fraud = true;
  e.amount = a;
  e.timestamp = ts;
  return e;
}

bool has_accounts(const Graph& g, NodeIndex n) { return !g.accounts_of(n).empty(); }

NodeIndex pick_account(const Graph& g, NodeIndex entity, Rng& rng) {
  const auto accts = g.accounts_of(entity);
  return accts[rng.index(accts.size())];
}

/// Random order biased towards high risk (exponential race over all members).
std::vector<NodeIndex> weighted_order(const Graph& g, std::vector<NodeIndex> pool, Rng& rng) {
  std::vector<std::pair<double, NodeIndex>> keyed;
  keyed.reserve(pool.size());
  for (NodeIndex n : pool) {
    double u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    keyed.emplace_back(-std::log(u) / std::max(g.node(n).risk_score, 1e-6), n);
  }
  std::sort(keyed.begin(), keyed.end());
  pool.clear();
  for (const auto& [_, n] : keyed) pool.push_back(n);
  return pool;
}

std::vector<NodeIndex> all_entities(const Graph& g, const std::function<bool(NodeIndex)>& keep) {
  std::vector<NodeIndex> out;
  for (NodeIndex n = 0; n < g.node_count(); ++n) {
    if (g.node(n).is_entity() && keep(n)) out.push_back(n);
  }
  return out;
}

/// Overseas counterparties with high-risk jurisdictions first.
std::vector<NodeIndex> overseas_counterparties(const PatternContext& ctx, std::size_t k,
                                               const std::set<NodeIndex>& exclude, Rng& rng,
                                               const std::function<bool(NodeIndex)>& extra = {}) {
  const Graph& g = ctx.graph;
  const std::string& home = ctx.graph_cfg.home_country;
  auto eligible = [&](NodeIndex n) {
    return g.node(n).country_code != home && has_accounts(g, n) && (!extra || extra(n));
  };
  auto out = select_from_cluster(g, ClusterId::high_risk_jurisdiction, k, exclude, rng, eligible);
  if (out.size() < k) {
    std::set<NodeIndex> ex2 = exclude;
    ex2.insert(out.begin(), out.end());
    auto rest = all_entities(g, [&](NodeIndex n) { return !ex2.count(n) && eligible(n); });
    auto more = weighted_select(g, std::move(rest), k - out.size(), rng);
    out.insert(out.end(), more.begin(), more.end());
  }
  return out;
}

struct Builder {
  PatternInstance inst;
  int next_leg = 0;

  void add(const TransactionEdge& e, const char* role, int funds_leg = -1) {
    inst.transactions.push_back({e, role, -1, 0, funds_leg});
  }

  void add_leg(const Graph& g, const std::vector<TransactionEdge>& edges, const char* role) {
    const int leg = next_leg++;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      inst.transactions.push_back({edges[k], role, leg, static_cast<int>(k), -1});
      if (k > 0) {
        inst.roles["intermediary_account"].push_back(edges[k].source);
        if (auto o = g.owner_of(edges[k].source)) inst.roles["intermediary"].push_back(*o);
      }
    }
  }

  PatternInstance finish() {
    std::stable_sort(inst.transactions.begin(), inst.transactions.end(),
                     [](const PatternTransaction& a, const PatternTransaction& b) {
                       return a.edge.timestamp < b.edge.timestamp;
                     });
    for (auto& [_, v] : inst.roles) {
      std::vector<NodeIndex> dedup;
      for (NodeIndex n : v) {
        if (std::find(dedup.begin(), dedup.end(), n) == dedup.end()) dedup.push_back(n);
      }
      v = std::move(dedup);
    }
    return std::move(inst);
  }
};

const IntermediaryPool& pool_for(const PatternContext& ctx, const LayeringConfig& lp) {
  return lp.pool == LayeringPool::uniform ? ctx.uniform_pool : ctx.high_risk_pool;
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<NodeIndex> controlled_accounts(const Graph& graph, NodeIndex entity) {
  const auto own = graph.accounts_of(entity);
  std::vector<NodeIndex> out(own.begin(), own.end());
  for (NodeIndex b : graph.businesses_of(entity)) {
    const auto accts = graph.accounts_of(b);
    out.insert(out.end(), accts.begin(), accts.end());
  }
  return out;
}

IntermediaryPool::IntermediaryPool(const Graph& graph, LayeringPool kind) {
  std::set<NodeIndex> owners;
  if (kind == LayeringPool::high_risk_cluster) {
    for (ClusterId c : kIntermediaryClusters) {
      const auto& members = graph.cluster(c);
      owners.insert(members.begin(), members.end());
    }
  }
  for (NodeIndex n = 0; n < graph.node_count(); ++n) {
    const auto* acc = graph.node(n).account();
    if (!acc || acc->account_category == AccountCategory::cash) continue;
    if (kind == LayeringPool::high_risk_cluster && !owners.count(acc->owner)) continue;
    accounts_.push_back(n);
  }
}

Seconds max_layering_span(const LayeringConfig& lp) {
  return lp.enabled ? lp.h_max * lp.hop_delay_max : 0;
}

std::vector<TransactionEdge> apply_layering(const Graph& graph, const IntermediaryPool& pool,
                                            NodeIndex src, NodeIndex dst, Money amount,
                                            Timestamp t, const LayeringConfig& lp, Rng& rng,
                                            std::optional<Timestamp> arrive_at) {
  if (src == dst) throw ValidationError("layering needs distinct endpoints");
  if (amount.cents() <= 0) throw ValidationError("layering needs a positive amount");
  if (!lp.enabled) {
    return {make_edge(src, dst, amount, arrive_at.value_or(t), Category::transfer)};
  }

  const auto h = static_cast<std::size_t>(rng.uniform_int(lp.h_min, lp.h_max));
  const auto accounts = pool.accounts();
  std::set<NodeIndex> blocked_owners;
  for (NodeIndex end : {src, dst}) {
    if (auto o = graph.owner_of(end)) blocked_owners.insert(*o);
  }
  std::vector<NodeIndex> path{src};
  std::size_t attempts = 0;
  const std::size_t max_attempts = 64 * h + 1024;
  while (path.size() < h + 1 && attempts++ < max_attempts && !accounts.empty()) {
    const NodeIndex a = accounts[rng.index(accounts.size())];
    if (a == src || a == dst) continue;
    const auto owner = graph.owner_of(a);
    if (owner && blocked_owners.count(*owner)) continue;
    if (owner) blocked_owners.insert(*owner);
    path.push_back(a);
  }
  if (path.size() < h + 1) {
    throw PoolExhausted("layering needs " + std::to_string(h) +
                        " distinct intermediaries; pool has " + std::to_string(accounts.size()) +
                        " accounts");
  }
  path.push_back(dst);

  std::vector<TransactionEdge> edges;
  Money amt = amount;
  Timestamp ts = t;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    if (k > 0) {
      Money next = amt.scaled(uniform_real(rng, {lp.decay_min, lp.decay_max}));
      if (next >= amt && amt.cents() > 1) next = amt - Money::from_cents(1);
      amt = next;
      ts += rng.uniform_int(lp.hop_delay_min, lp.hop_delay_max);
    }
    edges.push_back(make_edge(path[k], path[k + 1], amt, ts, Category::transfer));
  }
  if (arrive_at) {
    const Seconds shift = *arrive_at - edges.back().timestamp;
    for (auto& e : edges) e.timestamp += shift;
  }
  return edges;
}

// ---------------------------------------------------------------------------

PatternInstance inject_overseas_transfers(PatternContext& ctx, Rng& rng) {
  const auto& c = ctx.cfg.overseas_transfers;
  const Graph& g = ctx.graph;
  const TimeWindow w = g.window();
  const NodeIndex cash = *g.cash_node();
  const std::string& home = ctx.graph_cfg.home_country;

  const std::array src_clusters{ClusterId::high_risk_age, ClusterId::high_risk_occupation};
  auto src = select_from_clusters(g, src_clusters, 1, ctx.used, rng, [&](NodeIndex n) {
    return g.node(n).node_type == NodeType::individual && g.node(n).country_code == home &&
           has_accounts(g, n);
  });
  if (src.empty()) throw NoEligibleSource("no domestic high-risk individual with an account");
  const NodeIndex source = src.front();
  const NodeIndex src_acct = pick_account(g, source, rng);

  auto n = static_cast<std::size_t>(rng.uniform_int(c.transfers.min, c.transfers.max));
  auto d = static_cast<std::size_t>(
      rng.uniform_int(c.destinations.min, std::min<std::int64_t>(c.destinations.max,
                                                                 static_cast<std::int64_t>(n))));
  auto dests = overseas_counterparties(ctx, d, {source}, rng);
  if (dests.size() < static_cast<std::size_t>(c.destinations.min)) {
    throw NoOverseasDestinations("found " + std::to_string(dests.size()) +
                                 " overseas destinations, need " +
                                 std::to_string(c.destinations.min));
  }
  d = dests.size();

  const Seconds lead = c.deposit_lead.max;
  const Seconds tail = max_layering_span(c.layering);
  bool periodic = c.timing == TimingMode::periodic ||
                  (c.timing == TimingMode::mixed && rng.bernoulli(0.5));
  Seconds period = 0;
  if (periodic) {
    std::vector<Seconds> periods = c.periods;
    period = periods[rng.index(periods.size())];
    auto fits = [&](std::size_t k, Seconds p) {
      return lead + periodic_span(k, p, c.epsilon) + tail < w.length();
    };
    std::size_t k = n;
    while (k > static_cast<std::size_t>(c.transfers.min) && !fits(k, period)) --k;
    if (!fits(k, period)) {
      std::sort(periods.begin(), periods.end());
      period = 0;
      for (Seconds p : periods) {
        if (fits(k, p)) {
          period = p;
          break;
        }
      }
    }
    if (period == 0) {
      periodic = false;
    } else {
      n = k;
    }
  }
  d = std::min(d, n);
  dests.resize(d);

  const Seconds span = periodic ? periodic_span(n, period, c.epsilon) : c.burst_window;
  const Timestamp t0 = place(w, lead, span + tail, rng);
  const auto times = periodic ? schedule_periodic(n, period, c.epsilon, t0, rng)
                              : schedule_burst(n, c.burst_window, t0, rng);

  std::vector<NodeIndex> dest_accts;
  for (NodeIndex e : dests) dest_accts.push_back(pick_account(g, e, rng));
  std::vector<std::size_t> assign(n);
  for (std::size_t i = 0; i < n; ++i) assign[i] = i < d ? i : rng.index(d);
  rng.shuffle(std::span<std::size_t>(assign));

  Builder b;
  b.inst.typology = Typology::overseas_transfers;
  b.inst.roles["source"] = {source};
  b.inst.roles["source_account"] = {src_acct};
  b.inst.roles["destination"] = dests;
  b.inst.roles["destination_account"] = dest_accts;
  b.inst.roles["cash"] = {cash};

  const auto& pool = pool_for(ctx, c.layering);
  for (std::size_t i = 0; i < n; ++i) {
    const auto k = rng.uniform_int(kDepositsPerTransfer.min, kDepositsPerTransfer.max);
    for (std::int64_t j = 0; j < k; ++j) {
      const Timestamp ts = times[i] - uniform_duration(rng, c.deposit_lead);
      b.add(make_edge(cash, src_acct,
                      sub_threshold(rng, ctx.graph_cfg.reporting_threshold, ctx.cfg.sub_threshold),
                      ts, Category::deposit),
            role::deposit, b.next_leg);
    }
    const Money amount = uniform_money(rng, c.amount);
    b.add_leg(g, apply_layering(g, pool, src_acct, dest_accts[assign[i]], amount, times[i],
                                c.layering, rng),
              role::transfer);
  }

  json p = common_params(ctx);
  p["transfers"] = range_json(c.transfers);
  p["amount"] = range_json(c.amount);
  p["destinations"] = range_json(c.destinations);
  p["timing"] = periodic ? "periodic" : "burst";
  p["period"] = period;
  p["periods"] = c.periods;
  p["epsilon"] = c.epsilon;
  p["burst_window"] = c.burst_window;
  p["deposit_lead"] = range_json(c.deposit_lead);
  p["deposits_per_transfer"] = range_json(kDepositsPerTransfer);
  p["layering"] = layering_json(c.layering);
  b.inst.params_used = std::move(p);
  ctx.used.insert(source);
  return b.finish();
}

PatternInstance inject_rapid_movement(PatternContext& ctx, Rng& rng) {
  const auto& c = ctx.cfg.rapid_movement;
  const Graph& g = ctx.graph;
  const TimeWindow w = g.window();

  const std::array clusters{ClusterId::high_risk_age, ClusterId::high_risk_occupation,
                            ClusterId::high_risk_jurisdiction};
  auto ben = select_from_clusters(g, clusters, 1, ctx.used, rng, [&](NodeIndex n) {
    return g.node(n).node_type == NodeType::individual && g.accounts_of(n).size() >= 2 &&
           g.cash_account_of(n).has_value();
  });
  if (ben.empty()) throw NoEligibleBeneficiary("no high-risk individual with two accounts");
  const NodeIndex beneficiary = ben.front();
  const NodeIndex cash_acct = *g.cash_account_of(beneficiary);

  const auto n = static_cast<std::size_t>(rng.uniform_int(c.sources.min, c.sources.max));
  auto sources = overseas_counterparties(ctx, n, {beneficiary}, rng);
  if (sources.size() < static_cast<std::size_t>(std::max<std::int64_t>(c.sources.min, 2))) {
    throw NoEligibleSource("found " + std::to_string(sources.size()) + " overseas sources");
  }

  const Seconds lead = max_layering_span(c.layering);
  const Seconds tail = c.inflow_window + c.withdrawal_delay.max + c.withdrawal_window;
  const Timestamp t0 = place(w, lead, tail, rng);
  const auto arrivals = schedule_burst(sources.size(), c.inflow_window, t0, rng);

  const auto own = g.accounts_of(beneficiary);
  std::vector<NodeIndex> ben_accts(own.begin(), own.end());
  rng.shuffle(std::span<NodeIndex>(ben_accts));

  Builder b;
  b.inst.typology = Typology::rapid_movement;
  b.inst.roles["beneficiary"] = {beneficiary};
  b.inst.roles["beneficiary_cash_account"] = {cash_acct};
  b.inst.roles["source"] = sources;

  const auto& pool = pool_for(ctx, c.layering);
  Money inflow;
  std::vector<NodeIndex> receiving;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const NodeIndex src_acct = pick_account(g, sources[i], rng);
    const NodeIndex dst = ben_accts[i % ben_accts.size()];
    b.inst.roles["source_account"].push_back(src_acct);
    b.inst.roles["beneficiary_account"].push_back(dst);
    const Money amount =
        sub_threshold(rng, ctx.graph_cfg.reporting_threshold, ctx.cfg.sub_threshold);
    auto leg = apply_layering(g, pool, src_acct, dst, amount, arrivals[i], c.layering, rng,
                              arrivals[i]);
    inflow += leg.back().amount;
    receiving.push_back(dst);
    b.add_leg(g, leg, role::inflow);
  }

  const Timestamp last_arrival = arrivals.back();
  const Timestamp tw = last_arrival + uniform_duration(rng, c.withdrawal_delay);
  const auto m = static_cast<std::size_t>(rng.uniform_int(c.withdrawals.min, c.withdrawals.max));
  const Money outflow = inflow.scaled(uniform_real(rng, c.outflow_ratio));
  const auto parts = split_amount(outflow, m, rng);
  const auto wtimes = schedule_burst(m, c.withdrawal_window, tw, rng);
  for (std::size_t j = 0; j < m; ++j) {
    b.add(make_edge(receiving[j % receiving.size()], cash_acct, parts[j], wtimes[j],
                    Category::withdrawal),
          role::withdrawal);
  }

  json p = common_params(ctx);
  p["sources"] = range_json(c.sources);
  p["inflow_window"] = c.inflow_window;
  p["withdrawal_delay"] = range_json(c.withdrawal_delay);
  p["withdrawals"] = range_json(c.withdrawals);
  p["withdrawal_window"] = c.withdrawal_window;
  p["outflow_ratio"] = range_json(c.outflow_ratio);
  p["max_duration"] = c.max_duration;
  p["layering"] = layering_json(c.layering);
  b.inst.params_used = std::move(p);
  ctx.used.insert(beneficiary);
  return b.finish();
}

PatternInstance inject_front_business(PatternContext& ctx, Rng& rng) {
  const auto& c = ctx.cfg.front_business;
  const Graph& g = ctx.graph;
  const TimeWindow w = g.window();
  const NodeIndex cash = *g.cash_node();
  const std::string& home = ctx.graph_cfg.home_country;

  auto multi_bank = [&](NodeIndex n) {
    const auto accts = g.accounts_of(n);
    std::set<NodeIndex> banks;
    for (NodeIndex a : accts) banks.insert(g.node(a).account()->institution);
    return banks.size() >= 2;
  };
  auto biz = select_from_cluster(g, ClusterId::cash_intensive_business, 1, ctx.used, rng,
                                 [&](NodeIndex n) {
                                   return g.node(n).country_code == home && multi_bank(n);
                                 });
  if (biz.empty()) throw NoEligibleBusiness("no cash-intensive business with multi-bank accounts");
  const NodeIndex business = biz.front();

  const auto d = static_cast<std::size_t>(rng.uniform_int(c.destinations.min, c.destinations.max));
  auto overseas_business = [&](NodeIndex n) {
    return g.node(n).node_type == NodeType::business && g.node(n).country_code != home &&
           n != business && has_accounts(g, n);
  };
  std::vector<NodeIndex> hrj_first;
  {
    std::vector<NodeIndex> hrj;
    for (NodeIndex n : g.cluster(ClusterId::high_risk_jurisdiction)) {
      if (overseas_business(n)) hrj.push_back(n);
    }
    hrj_first = weighted_order(g, std::move(hrj), rng);
    auto rest = weighted_order(
        g,
        all_entities(g,
                     [&](NodeIndex n) {
                       return overseas_business(n) && !g.node(n).high_risk_jurisdiction;
                     }),
        rng);
    hrj_first.insert(hrj_first.end(), rest.begin(), rest.end());
  }
  std::vector<NodeIndex> dests;
  std::set<std::string> countries;
  for (NodeIndex n : hrj_first) {
    if (dests.size() == d) break;
    if (countries.insert(g.node(n).country_code).second) dests.push_back(n);
  }
  if (dests.size() < static_cast<std::size_t>(c.destinations.min)) {
    throw InsufficientOverseasBusinesses("found overseas businesses in " +
                                         std::to_string(dests.size()) + " countries");
  }

  auto n = static_cast<std::size_t>(rng.uniform_int(c.deposits.min, c.deposits.max));
  if (dests.size() > n) dests.resize(n);

  const Seconds tail = c.deposit_window + c.transfer_delay.max + max_layering_span(c.layering);
  const Timestamp t0 = place(w, 0, tail, rng);
  const auto times = schedule_burst(n, c.deposit_window, t0, rng);

  const auto own = g.accounts_of(business);
  std::vector<NodeIndex> accts(own.begin(), own.end());
  rng.shuffle(std::span<NodeIndex>(accts));
  for (std::size_t i = 1; i < accts.size(); ++i) {
    if (g.node(accts[i]).account()->institution != g.node(accts[0]).account()->institution) {
      std::swap(accts[1], accts[i]);
      break;
    }
  }

  std::vector<NodeIndex> dest_accts;
  for (NodeIndex e : dests) dest_accts.push_back(pick_account(g, e, rng));
  std::vector<std::size_t> assign(n);
  for (std::size_t i = 0; i < n; ++i) assign[i] = i < dests.size() ? i : rng.index(dests.size());
  rng.shuffle(std::span<std::size_t>(assign));

  Builder b;
  b.inst.typology = Typology::front_business;
  b.inst.roles["business"] = {business};
  b.inst.roles["destination"] = dests;
  b.inst.roles["destination_account"] = dest_accts;
  b.inst.roles["cash"] = {cash};

  const auto& pool = pool_for(ctx, c.layering);
  for (std::size_t i = 0; i < n; ++i) {
    const NodeIndex acct = accts[i % accts.size()];
    b.inst.roles["business_account"].push_back(acct);
    const Money deposit = uniform_money(rng, c.deposit_amount);
    b.add(make_edge(cash, acct, deposit, times[i], Category::deposit), role::deposit, b.next_leg);
    const Timestamp tt = times[i] + uniform_duration(rng, c.transfer_delay);
    const Money amount = deposit.scaled(uniform_real(rng, c.transfer_ratio));
    b.add_leg(g, apply_layering(g, pool, acct, dest_accts[assign[i]], amount, tt, c.layering, rng),
              role::transfer);
  }

  json p = common_params(ctx);
  p["deposits"] = range_json(c.deposits);
  p["deposit_amount"] = range_json(c.deposit_amount);
  p["deposit_window"] = c.deposit_window;
  p["transfer_delay"] = range_json(c.transfer_delay);
  p["transfer_ratio"] = range_json(c.transfer_ratio);
  p["destinations"] = range_json(c.destinations);
  p["layering"] = layering_json(c.layering);
  b.inst.params_used = std::move(p);
  ctx.used.insert(business);
  return b.finish();
}

PatternInstance inject_synchronised(PatternContext& ctx, Rng& rng) {
  const auto& c = ctx.cfg.synchronised;
  const Graph& g = ctx.graph;
  const TimeWindow w = g.window();
  const NodeIndex cash = *g.cash_node();

  const auto k = static_cast<std::size_t>(rng.uniform_int(c.coordinators.min, c.coordinators.max));
  auto candidates = all_entities(g, [&](NodeIndex n) {
    return g.node(n).node_type == NodeType::individual && !ctx.used.count(n) && has_accounts(g, n);
  });
  rng.shuffle(std::span<NodeIndex>(candidates));
  std::vector<NodeIndex> coords;
  for (NodeIndex n : candidates) {
    if (coords.size() == k) break;
    const auto& a = *g.node(n).individual();
    bool diverse = true;
    for (NodeIndex o : coords) {
      const auto& b = *g.node(o).individual();
      if (a.age_group == b.age_group && a.occupation == b.occupation &&
          g.node(n).country_code == g.node(o).country_code) {
        diverse = false;
        break;
      }
    }
    if (diverse) coords.push_back(n);
  }
  if (coords.size() < static_cast<std::size_t>(c.coordinators.min)) {
    throw InsufficientCoordinators("found " + std::to_string(coords.size()) +
                                   " diverse coordinators");
  }

  std::set<NodeIndex> ex = ctx.used;
  ex.insert(coords.begin(), coords.end());
  auto rec = select_from_cluster(g, ClusterId::high_risk_jurisdiction, 1, ex, rng,
                                 [&](NodeIndex n) { return has_accounts(g, n); });
  if (rec.empty()) rec = overseas_counterparties(ctx, 1, ex, rng);
  if (rec.empty()) {
    rec = weighted_select(g, all_entities(g, [&](NodeIndex n) {
                            return !ex.count(n) && has_accounts(g, n);
                          }),
                          1, rng);
  }
  if (rec.empty()) throw NoEligibleEntities("no recipient for synchronised transactions");
  const NodeIndex recipient = rec.front();
  const NodeIndex rec_acct = pick_account(g, recipient, rng);

  std::vector<std::size_t> slots;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const auto m = rng.uniform_int(c.deposits_per_coordinator.min, c.deposits_per_coordinator.max);
    for (std::int64_t j = 0; j < m; ++j) slots.push_back(i);
  }
  rng.shuffle(std::span<std::size_t>(slots));

  const Timestamp t0 = place(w, 0, c.sync_window + c.transfer_delay.max, rng);
  const auto times = schedule_burst(slots.size(), c.sync_window, t0, rng);

  Builder b;
  b.inst.typology = Typology::synchronised;
  b.inst.roles["coordinator"] = coords;
  b.inst.roles["recipient"] = {recipient};
  b.inst.roles["recipient_account"] = {rec_acct};
  b.inst.roles["cash"] = {cash};

  std::vector<NodeIndex> accts;
  for (NodeIndex n : coords) accts.push_back(pick_account(g, n, rng));
  b.inst.roles["coordinator_account"] = accts;
  std::vector<Money> received(coords.size());
  std::vector<Timestamp> last(coords.size(), 0);
  for (std::size_t s = 0; s < slots.size(); ++s) {
    const std::size_t i = slots[s];
    const Money amt = sub_threshold(rng, ctx.graph_cfg.reporting_threshold, ctx.cfg.sub_threshold);
    b.add(make_edge(cash, accts[i], amt, times[s], Category::deposit), role::deposit,
          static_cast<int>(i));
    received[i] += amt;
    last[i] = std::max(last[i], times[s]);
  }
  json profiles = json::array();
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const Timestamp tt = last[i] + uniform_duration(rng, c.transfer_delay);
    const Money amt = received[i].scaled(uniform_real(rng, c.transfer_ratio));
    b.add_leg(g, {make_edge(accts[i], rec_acct, amt, tt, Category::transfer)}, role::transfer);
    const auto& ind = *g.node(coords[i]).individual();
    profiles.push_back(json::array(
        {std::string(to_string(ind.age_group)), ind.occupation, g.node(coords[i]).country_code}));
  }

  json p = common_params(ctx);
  p["coordinators"] = range_json(c.coordinators);
  p["sync_window"] = c.sync_window;
  p["deposits_per_coordinator"] = range_json(c.deposits_per_coordinator);
  p["transfer_delay"] = range_json(c.transfer_delay);
  p["transfer_ratio"] = range_json(c.transfer_ratio);
  p["coordinator_profiles"] = std::move(profiles);
  b.inst.params_used = std::move(p);
  ctx.used.insert(coords.begin(), coords.end());
  ctx.used.insert(recipient);
  return b.finish();
}

PatternInstance inject_u_turn(PatternContext& ctx, Rng& rng) {
  const auto& c = ctx.cfg.u_turn;
  const Graph& g = ctx.graph;
  const TimeWindow w = g.window();

  const std::array src_clusters{ClusterId::high_risk_age, ClusterId::high_risk_occupation,
                                ClusterId::high_risk_jurisdiction,
                                ClusterId::cash_intensive_business};
  auto src = select_from_clusters(g, src_clusters, 1, ctx.used, rng, [&](NodeIndex n) {
    return has_accounts(g, n) && controlled_accounts(g, n).size() >= 2;
  });
  if (src.empty()) throw NoEligibleSource("no high-risk entity controlling two accounts");
  const NodeIndex source = src.front();
  const NodeIndex origin = pick_account(g, source, rng);
  std::vector<NodeIndex> returns;
  for (NodeIndex a : controlled_accounts(g, source)) {
    if (a != origin) returns.push_back(a);
  }
  const NodeIndex ret_acct = returns[rng.index(returns.size())];

  const auto L = static_cast<std::size_t>(rng.uniform_int(c.chain_entities.min, c.chain_entities.max));
  const std::size_t m = L - 1;

  std::set<NodeIndex> ex{source};
  for (NodeIndex b : g.businesses_of(source)) ex.insert(b);
  if (const auto* biz = g.node(source).business()) ex.insert(biz->owner);
  auto first = select_from_cluster(g, ClusterId::high_risk_jurisdiction, 1, ex, rng,
                                   [&](NodeIndex n) { return has_accounts(g, n); });
  if (first.empty()) throw PoolExhausted("no high-risk-jurisdiction intermediary available");
  ex.insert(first.front());
  const std::array mule_clusters{ClusterId::young_adult_18_24, ClusterId::elderly_65_plus,
                                 ClusterId::high_risk_occupation,
                                 ClusterId::high_risk_jurisdiction};
  auto mules = select_from_clusters(g, mule_clusters, m - 1, ex, rng, [&](NodeIndex n) {
    return g.node(n).node_type == NodeType::individual && has_accounts(g, n);
  });
  if (mules.size() < m - 1) {
    throw PoolExhausted("need " + std::to_string(m - 1) + " mule intermediaries, found " +
                        std::to_string(mules.size()));
  }
  std::vector<NodeIndex> chain{first.front()};
  chain.insert(chain.end(), mules.begin(), mules.end());
  rng.shuffle(std::span<NodeIndex>(chain));
  std::vector<NodeIndex> chain_accts;
  for (NodeIndex n : chain) chain_accts.push_back(pick_account(g, n, rng));

  const Timestamp t0 = place(w, 0, static_cast<Seconds>(L) * c.hop_delay.max, rng);
  const Money initial = uniform_money(rng, c.initial_amount);

  Builder b;
  b.inst.typology = Typology::u_turn;
  b.inst.roles["source"] = {source};
  b.inst.roles["origin_account"] = {origin};
  b.inst.roles["return_account"] = {ret_acct};
  b.inst.roles["intermediary"] = chain;
  b.inst.roles["intermediary_account"] = chain_accts;

  Timestamp ts = t0;
  Money amt = initial;
  b.add(make_edge(origin, chain_accts[0], amt, ts, Category::transfer), role::transfer);
  for (std::size_t k = 1; k < m; ++k) {
    ts += uniform_duration(rng, c.hop_delay);
    amt = amt.scaled(1.0 - uniform_real(rng, c.fee));
    b.add(make_edge(chain_accts[k - 1], chain_accts[k], amt, ts, Category::transfer), role::hop);
  }
  // The return is a share of the remaining amount; the range is narrowed so
  // the share of the initial amount lands in the same interval when possible.
  const double grow = static_cast<double>(initial.cents()) / static_cast<double>(amt.cents());
  RealRange r{std::max(c.return_ratio.min, c.return_ratio.min * grow), c.return_ratio.max};
  if (r.min > r.max) r = c.return_ratio;
  ts += uniform_duration(rng, c.hop_delay);
  b.add(make_edge(chain_accts[m - 1], ret_acct, amt.scaled(uniform_real(rng, r)), ts,
                  Category::transfer),
        role::ret);
  for (std::size_t k = 0; k < b.inst.transactions.size(); ++k) {
    b.inst.transactions[k].leg = 0;
    b.inst.transactions[k].step = static_cast<int>(k);
  }

  json p = common_params(ctx);
  p["chain_entities"] = range_json(c.chain_entities);
  p["initial_amount"] = range_json(c.initial_amount);
  p["hop_delay"] = range_json(c.hop_delay);
  p["fee"] = range_json(c.fee);
  p["return_ratio"] = range_json(c.return_ratio);
  b.inst.params_used = std::move(p);
  ctx.used.insert(source);
  return b.finish();
}

// ---------------------------------------------------------------------------

namespace {

std::int64_t instance_count(const PatternConfig& p, Typology t) {
  switch (t) {
    case Typology::overseas_transfers: return p.overseas_transfers.instance_count;
    case Typology::rapid_movement: return p.rapid_movement.instance_count;
    case Typology::front_business: return p.front_business.instance_count;
    case Typology::synchronised: return p.synchronised.instance_count;
    case Typology::u_turn: return p.u_turn.instance_count;
  }
  return 0;
}

PatternInstance build(Typology t, PatternContext& ctx, Rng& rng) {
  switch (t) {
    case Typology::overseas_transfers: return inject_overseas_transfers(ctx, rng);
    case Typology::rapid_movement: return inject_rapid_movement(ctx, rng);
    case Typology::front_business: return inject_front_business(ctx, rng);
    case Typology::synchronised: return inject_synchronised(ctx, rng);
    case Typology::u_turn: return inject_u_turn(ctx, rng);
  }
  throw UnknownTypology("unknown typology");
}

struct TypologyRun {
  std::vector<PatternInstance> instances;
  std::vector<std::string> warnings;
  std::exception_ptr error;
};

}  // namespace

InjectionResult inject_all(Graph& graph, const GraphConfig& gcfg, const PatternConfig& pcfg,
                           const Rng& rng, unsigned threads) {
  const IntermediaryPool uniform(graph, LayeringPool::uniform);
  const IntermediaryPool high_risk(graph, LayeringPool::high_risk_cluster);
  std::array<TypologyRun, kAllTypologies.size()> runs;

  auto run = [&](std::size_t ti) {
    const Typology t = kAllTypologies[ti];
    const std::string label = "pattern/" + std::string(to_string(t));
    PatternContext ctx{graph, gcfg, pcfg, uniform, high_risk, {}};
    const auto count = instance_count(pcfg, t);
    for (std::int64_t i = 0; i < count; ++i) {
      Rng r = rng.derive(label, static_cast<std::uint64_t>(i));
      try {
        PatternInstance inst = build(t, ctx, r);
        inst.instance_id = static_cast<std::uint64_t>(i);
        runs[ti].instances.push_back(std::move(inst));
      } catch (const Error& e) {
        const bool recoverable = dynamic_cast<const NoEligibleEntities*>(&e) ||
                                 dynamic_cast<const PoolExhausted*>(&e) ||
                                 dynamic_cast<const InvalidWindow*>(&e);
        if (pcfg.strict || !recoverable) {
          runs[ti].error = std::current_exception();
          return;
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s/%04lld", std::string(to_string(t)).c_str(),
                      static_cast<long long>(i));
        runs[ti].warnings.push_back(std::string(buf) + " skipped: " + e.what());
      }
    }
  };

  const std::size_t workers = std::min<std::size_t>(std::max(threads, 1u), runs.size());
  if (workers <= 1) {
    for (std::size_t ti = 0; ti < runs.size(); ++ti) run(ti);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t ti = next++; ti < runs.size(); ti = next++) run(ti);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& r : runs) {
    if (r.error) std::rethrow_exception(r.error);
  }

  InjectionResult out;
  for (auto& r : runs) {
    for (auto& inst : r.instances) {
      for (auto& tx : inst.transactions) tx.edge.edge_id = graph.insert_transaction(tx.edge);
      out.instances.push_back(std::move(inst));
    }
    out.warnings.insert(out.warnings.end(), r.warnings.begin(), r.warnings.end());
  }

  const auto cash = graph.cash_node();
  auto mark = [&](NodeIndex n) {
    if (cash && n == *cash) return;
    const EntityNode& node = graph.node(n);
    if (node.node_type == NodeType::institution) return;
    graph.mark_fraudulent(n);
    if (auto o = graph.owner_of(n)) graph.mark_fraudulent(*o);
  };
  for (const auto& inst : out.instances) {
    for (const auto& [_, members] : inst.roles) {
      for (NodeIndex n : members) mark(n);
    }
    for (const auto& tx : inst.transactions) {
      mark(tx.edge.source);
      mark(tx.edge.target);
    }
  }
  return out;
}

}  // namespace amlgen
