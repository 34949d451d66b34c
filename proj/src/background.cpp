#include "amlgen/background.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "amlgen/error.hpp"
#include "amlgen/schedule.hpp"

namespace amlgen {

std::string_view to_string(CounterLeakageKind k) {
  switch (k) {
    case CounterLeakageKind::bursts: return "bursts";
    case CounterLeakageKind::chains: return "chains";
    case CounterLeakageKind::rapid_flow: return "rapid_flow";
    case CounterLeakageKind::cash_ops: return "cash_ops";
    case CounterLeakageKind::structuring: return "structuring";
    case CounterLeakageKind::high_risk_activity: return "high_risk_activity";
    case CounterLeakageKind::periodic: return "periodic";
  }
  return "?";
}

CounterLeakageKind parse_counter_leakage_kind(std::string_view s) {
  for (auto k : kAllCounterLeakageKinds) {
    if (to_string(k) == s) return k;
  }
  throw UnknownKind("unknown counter-leakage kind '" + std::string(s) + "'");
}

AmountModel amount_model(const GraphConfig& cfg) {
  AmountModel m;
  m.params = cfg.amount_params;
  m.structuring_range = cfg.background.structuring_range;
  m.structuring_share = cfg.background.structuring_share;
  return m;
}

Money sample_amount(AmountKind kind, const AmountModel& model, Rng& rng) {
  auto it = model.params.find(kind);
  if (it == model.params.end()) {
    throw UnknownType("no amount parameters for '" + std::string(to_string(kind)) + "'");
  }
  const auto& p = it->second;
  const double x = std::clamp(rng.lognormal(p.mu, p.sigma), p.min, p.max);
  return Money::from_units(x);
}

Money sample_structuring_amount(const MoneyRange& range, Rng& rng) {
  return Money::from_cents(rng.uniform_int(range.min.cents(), range.max.cents()));
}

Money sample_structuring_amount(const AmountModel& model, Rng& rng) {
  return sample_structuring_amount(model.structuring_range, rng);
}

Money sample_background_amount(Category category, const AmountModel& model, Rng& rng) {
  if (rng.bernoulli(model.structuring_share)) return sample_structuring_amount(model, rng);
  return sample_amount(amount_kind_for(category), model, rng);
}

// ---------------------------------------------------------------------------

std::int64_t BackgroundBudget::counter_leakage_total() const {
  std::int64_t n = 0;
  for (const auto& [_, v] : counter_leakage) n += v;
  return n;
}

BackgroundBudget compute_background_budget(const GraphConfig& cfg, std::int64_t fraud_edges,
                                           std::size_t accounts, std::size_t fraud_accounts,
                                           std::int64_t days) {
  const double ratio = cfg.target_illicit_ratio;
  if (!(ratio > 0.0 && ratio < 1.0)) throw InvalidRatio("target ratio must lie in (0, 1)");
  if (fraud_edges <= 0) throw InvalidRatio("fraud edge count must be positive");
  if (days <= 0) throw InvalidRatio("simulation must span at least one day");

  BackgroundBudget b;
  b.fraud_edges = fraud_edges;
  b.total_target = std::llround(static_cast<double>(fraud_edges) / ratio);
  b.background_target = std::max<std::int64_t>(b.total_target - fraud_edges, 0);

  const auto& bg = cfg.background;
  const double share_sum =
      bg.random_share + bg.salary_share + bg.high_value_share + bg.counter_leakage_share;
  const double random_frac = share_sum > 0 ? bg.random_share / share_sum : 1.0;
  const double da = static_cast<double>(days) * static_cast<double>(std::max<std::size_t>(accounts, 1));

  auto fraudster_for = [&](double r) {
    const auto per = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(r * static_cast<double>(days))));
    return static_cast<std::int64_t>(fraud_accounts) * per;
  };

  // r feeds back into the fraudster count; a few rounds settle it.
  double r = static_cast<double>(b.background_target) * random_frac / da;
  std::int64_t rest = b.background_target;
  for (int i = 0; i < 32; ++i) {
    rest = std::max<std::int64_t>(b.background_target - fraudster_for(r), 0);
    const double next = static_cast<double>(rest) * random_frac / da;
    if (std::abs(next - r) < 1e-12) break;
    r = next;
  }
  if (r > cfg.per_account_daily_rate_cap) {
    b.cap_binds = true;
    r = cfg.per_account_daily_rate_cap;
    const double random_alloc = std::floor(r * da);
    rest = std::llround(random_alloc / random_frac);
  }
  b.effective_daily_rate = r;
  b.fraudster = fraudster_for(r);

  auto portion = [&](double share) {
    return share_sum > 0 ? static_cast<std::int64_t>(std::floor(static_cast<double>(rest) * share / share_sum)) : 0;
  };
  b.salary = portion(bg.salary_share);
  b.high_value = portion(bg.high_value_share);
  const std::int64_t cl = portion(bg.counter_leakage_share);
  const auto kinds = static_cast<std::int64_t>(kAllCounterLeakageKinds.size());
  for (std::size_t i = 0; i < kAllCounterLeakageKinds.size(); ++i) {
    b.counter_leakage[kAllCounterLeakageKinds[i]] =
        cl / kinds + (static_cast<std::int64_t>(i) < cl % kinds ? 1 : 0);
  }
  b.random = std::max<std::int64_t>(rest - b.salary - b.high_value - cl, 0);

  const std::int64_t planned = b.random + b.salary + b.high_value + cl + b.fraudster;
  b.achievable_ratio = static_cast<double>(fraud_edges) / static_cast<double>(fraud_edges + planned);
  if (b.cap_binds) {
    b.warnings.push_back("per-account daily rate cap " + std::to_string(cfg.per_account_daily_rate_cap) +
                         " binds; achievable illicit ratio is " + std::to_string(b.achievable_ratio) +
                         " instead of " + std::to_string(ratio));
  }
  return b;
}

BackgroundBudget fallback_background_budget(const GraphConfig& cfg, std::size_t accounts,
                                            std::size_t fraud_accounts, std::int64_t days) {
  const auto& bg = cfg.background;
  const double share_sum =
      bg.random_share + bg.salary_share + bg.high_value_share + bg.counter_leakage_share;
  const double rate = std::min(kFallbackDailyRate, cfg.per_account_daily_rate_cap);
  BackgroundBudget b;
  b.effective_daily_rate = rate;
  b.random = random_payment_count(rate, days, accounts, std::nullopt);
  const double rest = share_sum > 0 && bg.random_share > 0
                          ? static_cast<double>(b.random) * share_sum / bg.random_share
                          : static_cast<double>(b.random);
  auto portion = [&](double share) {
    return share_sum > 0 ? static_cast<std::int64_t>(std::floor(rest * share / share_sum)) : 0;
  };
  b.salary = portion(bg.salary_share);
  b.high_value = portion(bg.high_value_share);
  const std::int64_t cl = portion(bg.counter_leakage_share);
  const auto kinds = static_cast<std::int64_t>(kAllCounterLeakageKinds.size());
  for (std::size_t i = 0; i < kAllCounterLeakageKinds.size(); ++i) {
    b.counter_leakage[kAllCounterLeakageKinds[i]] =
        cl / kinds + (static_cast<std::int64_t>(i) < cl % kinds ? 1 : 0);
  }
  const auto per = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::floor(rate * static_cast<double>(days))));
  b.fraudster = static_cast<std::int64_t>(fraud_accounts) * per;
  b.background_target = b.random + b.salary + b.high_value + cl + b.fraudster;
  b.total_target = b.background_target;
  b.warnings.push_back("no fraud edges were injected; background volume uses a daily rate of " +
                       std::to_string(rate) + " per account");
  return b;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::array kLeakagePeriods{7 * kDay, 14 * kDay, 30 * kDay};
constexpr Seconds kLeakageEpsilon = 6 * kHour;
constexpr std::int64_t kRandomChunk = 1 << 16;

TransactionEdge legit_edge(NodeIndex s, NodeIndex t, Money a, Timestamp ts, Category c) {
  TransactionEdge e;
  e.source = s;
  e.target = t;
  e.relation = Relation::transaction;
  e.category = c;
  e.is_fraud = false;
  e.amount = a;
  e.timestamp = ts;
  return e;
}

NodeIndex pick(const std::vector<NodeIndex>& v, Rng& rng) { return v[rng.index(v.size())]; }

/// Draws from v avoiding `not_this`; gives up after a few tries.
NodeIndex pick_other(const std::vector<NodeIndex>& v, NodeIndex not_this, Rng& rng) {
  NodeIndex n = pick(v, rng);
  for (int i = 0; i < 8 && n == not_this && v.size() > 1; ++i) n = pick(v, rng);
  return n;
}

Timestamp uniform_time(const TimeWindow& w, Seconds reserve, Rng& rng) {
  return rng.uniform_int(w.start, std::max(w.start, w.end - 1 - reserve));
}

std::vector<double> category_weights(const GraphConfig& cfg, std::vector<Category>& cats) {
  std::vector<double> w;
  for (const auto& [c, v] : cfg.normalized_background_weights()) {
    cats.push_back(c);
    w.push_back(v);
  }
  return w;
}

NodeIndex cash_account(const Graph& g, NodeIndex account) {
  const auto owner = g.owner_of(account);
  if (!owner) return account;
  return g.cash_account_of(*owner).value_or(account);
}

/// Builds one everyday edge for `acct` in the given category. `outgoing`
/// picks the direction for payments and transfers.
TransactionEdge everyday_edge(const Graph& g, const AccountPools& pools, NodeIndex acct,
                              Category cat, bool outgoing, Money amount, Timestamp ts, Rng& rng) {
  switch (cat) {
    case Category::payment: {
      const NodeIndex other = pick_other(pools.business_accounts, acct, rng);
      return outgoing ? legit_edge(acct, other, amount, ts, cat)
                      : legit_edge(other, acct, amount, ts, cat);
    }
    case Category::transfer:
    case Category::salary: {
      const NodeIndex other = pick_other(pools.individual_accounts, acct, rng);
      return outgoing ? legit_edge(acct, other, amount, ts, cat)
                      : legit_edge(other, acct, amount, ts, cat);
    }
    case Category::deposit: return legit_edge(*g.cash_node(), acct, amount, ts, cat);
    case Category::withdrawal: return legit_edge(acct, cash_account(g, acct), amount, ts, cat);
  }
  return legit_edge(acct, acct, amount, ts, cat);
}

}  // namespace

Timestamp business_hours_time(const TimeWindow& w, Rng& rng) {
  const auto days = std::max<std::int64_t>(w.days(), 1);
  const Timestamp day = w.start + rng.uniform_int(0, days - 1) * kDay;
  return day + rng.uniform_int(9 * kHour, 17 * kHour - 1);
}

AccountPools build_account_pools(const Graph& graph, const GraphConfig& cfg, Rng& rng) {
  AccountPools p;
  std::set<NodeIndex> high_risk_owners;
  for (ClusterId c : {ClusterId::high_risk_age, ClusterId::high_risk_occupation,
                      ClusterId::high_risk_jurisdiction, ClusterId::cash_intensive_business,
                      ClusterId::very_small_company}) {
    const auto& members = graph.cluster(c);
    high_risk_owners.insert(members.begin(), members.end());
  }
  for (NodeIndex n = 0; n < graph.node_count(); ++n) {
    const EntityNode& node = graph.node(n);
    const auto* acc = node.account();
    if (!acc || acc->account_category == AccountCategory::cash) continue;
    const EntityNode& owner = graph.node(acc->owner);
    if (node.is_fraudulent) {
      p.fraud.push_back(n);
    } else {
      p.legit.push_back(n);
      if (const auto* ind = owner.individual(); ind && ind->high_paid) p.high_value.push_back(n);
      if (const auto* biz = owner.business();
          biz && biz->number_of_employees > cfg.background.high_value_min_employees) {
        p.high_value.push_back(n);
      }
      if (high_risk_owners.count(acc->owner)) p.high_risk.push_back(n);
    }
    if (owner.node_type == NodeType::business) {
      p.business_accounts.push_back(n);
    } else {
      p.individual_accounts.push_back(n);
    }
  }
  p.random_pool = p.legit;
  std::vector<NodeIndex> fraud = p.fraud;
  rng.shuffle(std::span<NodeIndex>(fraud));
  const auto k = static_cast<std::size_t>(
      std::llround(cfg.background.fraud_account_share * static_cast<double>(fraud.size())));
  p.random_pool.insert(p.random_pool.end(), fraud.begin(),
                       fraud.begin() + static_cast<std::ptrdiff_t>(k));
  if (p.business_accounts.empty()) p.business_accounts = p.legit;
  if (p.individual_accounts.empty()) p.individual_accounts = p.legit;
  return p;
}

std::int64_t random_payment_count(double rate, std::int64_t days, std::size_t accounts,
                                  std::optional<std::int64_t> budget) {
  auto n = static_cast<std::int64_t>(
      std::floor(rate * static_cast<double>(days) * static_cast<double>(accounts)));
  if (budget) n = std::min(n, *budget);
  return std::max<std::int64_t>(n, 0);
}

std::vector<TransactionEdge> generate_random_payments(const Graph& graph, const GraphConfig& cfg,
                                                      const AccountPools& pools,
                                                      std::int64_t count, const Rng& rng,
                                                      unsigned threads) {
  if (count <= 0 || pools.random_pool.empty()) return {};
  std::vector<TransactionEdge> out(static_cast<std::size_t>(count));
  const AmountModel model = amount_model(cfg);
  std::vector<Category> cats;
  const auto weights = category_weights(cfg, cats);
  const TimeWindow w = graph.window();
  const std::int64_t chunks = (count + kRandomChunk - 1) / kRandomChunk;

  auto fill_chunk = [&](std::int64_t c) {
    Rng r = rng.derive("background/random", static_cast<std::uint64_t>(c));
    const std::int64_t lo = c * kRandomChunk;
    const std::int64_t hi = std::min(count, lo + kRandomChunk);
    for (std::int64_t i = lo; i < hi; ++i) {
      const NodeIndex acct = pick(pools.random_pool, r);
      const Category cat = cats[r.weighted_index(weights)];
      const Timestamp ts = r.uniform_int(w.start, w.end - 1);
      const Money amount = sample_background_amount(cat, model, r);
      out[static_cast<std::size_t>(i)] = everyday_edge(graph, pools, acct, cat, true, amount, ts, r);
    }
  };

  const auto workers = static_cast<std::int64_t>(std::max(1u, threads));
  if (workers == 1 || chunks == 1) {
    for (std::int64_t c = 0; c < chunks; ++c) fill_chunk(c);
  } else {
    std::vector<std::thread> pool;
    for (std::int64_t t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        for (std::int64_t c = t; c < chunks; c += workers) fill_chunk(c);
      });
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

std::vector<TransactionEdge> generate_high_value(const Graph& graph, const GraphConfig& cfg,
                                                 const AccountPools& pools, double r_monthly,
                                                 double months, Rng& rng) {
  const auto n = static_cast<std::int64_t>(
      std::floor(r_monthly * months * static_cast<double>(pools.high_value.size())));
  std::vector<TransactionEdge> out;
  if (n <= 0 || pools.high_value.empty()) return out;
  out.reserve(static_cast<std::size_t>(n));
  const AmountModel model = amount_model(cfg);
  for (std::int64_t i = 0; i < n; ++i) {
    const NodeIndex src = pick(pools.high_value, rng);
    const bool from_business = graph.node(*graph.owner_of(src)).node_type == NodeType::business;
    const bool to_business = !from_business || rng.bernoulli(0.5);
    const NodeIndex dst =
        pick_other(to_business ? pools.business_accounts : pools.individual_accounts, src, rng);
    Money amount = sample_amount(AmountKind::high_value, model, rng);
    const auto hundreds = std::max<std::int64_t>(1, std::llround(amount.units() / 100.0));
    amount = Money::from_cents(hundreds * 10000);
    out.push_back(legit_edge(src, dst, amount, business_hours_time(graph.window(), rng),
                             to_business ? Category::payment : Category::transfer));
  }
  return out;
}

std::vector<Timestamp> salary_dates(const GraphConfig& cfg) {
  using namespace std::chrono;
  const TimeWindow w = cfg.window();
  std::vector<Timestamp> out;
  auto push = [&](sys_days d) {
    const Timestamp t = static_cast<Timestamp>(d.time_since_epoch().count()) * kDay;
    if (w.contains(t)) out.push_back(t);
  };
  if (cfg.background.salary_schedule == SalarySchedule::monthly) {
    const year_month_day first{cfg.simulation_start.days};
    const year_month_day last{cfg.simulation_end.days};
    for (year_month ym = first.year() / first.month(); ym <= last.year() / last.month();
         ym += months{1}) {
      const unsigned last_day = static_cast<unsigned>((ym / std::chrono::last).day());
      std::vector<unsigned> days;
      for (int d : cfg.background.pay_days) {
        days.push_back(std::min(static_cast<unsigned>(std::max(d, 1)), last_day));
      }
      std::sort(days.begin(), days.end());
      days.erase(std::unique(days.begin(), days.end()), days.end());
      for (unsigned d : days) push(sys_days{ym / day{d}});
    }
  } else {
    const Seconds step = cfg.background.salary_schedule == SalarySchedule::biweekly
                             ? 14 * kDay
                             : std::max<Seconds>(cfg.background.salary_period, kDay);
    for (Timestamp t = w.start; t < w.end; t += step) out.push_back(day_start(t));
  }
  return out;
}

std::vector<TransactionEdge> generate_salaries(const Graph& graph, const GraphConfig& cfg,
                                               Rng& rng, std::optional<std::int64_t> max_edges) {
  std::vector<NodeIndex> payers;
  std::vector<NodeIndex> recipients;
  for (NodeIndex n = 0; n < graph.node_count(); ++n) {
    const EntityNode& node = graph.node(n);
    if (node.is_fraudulent || graph.accounts_of(n).empty()) continue;
    if (node.node_type == NodeType::business) payers.push_back(n);
    if (node.node_type == NodeType::individual) recipients.push_back(n);
  }
  std::vector<TransactionEdge> out;
  const auto dates = salary_dates(cfg);
  if (payers.empty() || recipients.empty() || dates.empty()) return out;
  rng.shuffle(std::span<NodeIndex>(payers));

  const AmountModel model = amount_model(cfg);
  const double jitter = cfg.background.salary_jitter;
  const auto per_pair = static_cast<std::int64_t>(dates.size());
  for (NodeIndex biz : payers) {
    const auto k = rng.uniform_int(cfg.background.salary_recipients.min,
                                   cfg.background.salary_recipients.max);
    const auto payer_accts = graph.accounts_of(biz);
    const NodeIndex from = payer_accts[0];
    std::set<NodeIndex> chosen;
    for (std::int64_t j = 0; j < k; ++j) {
      if (max_edges && static_cast<std::int64_t>(out.size()) + per_pair > *max_edges) return out;
      NodeIndex person = pick(recipients, rng);
      for (int t = 0; t < 8 && chosen.count(person); ++t) person = pick(recipients, rng);
      if (!chosen.insert(person).second) continue;
      const NodeIndex to = graph.accounts_of(person)[0];
      const Money base = sample_amount(AmountKind::salary, model, rng);
      for (Timestamp d : dates) {
        const double f = jitter > 0 ? 1.0 + rng.uniform(-jitter, jitter) : 1.0;
        const Timestamp ts = d + rng.uniform_int(9 * kHour, 17 * kHour - 1);
        out.push_back(legit_edge(from, to, base.scaled(f), ts, Category::salary));
      }
    }
  }
  return out;
}

std::vector<TransactionEdge> generate_fraudster_background(const Graph& graph,
                                                           const GraphConfig& cfg,
                                                           const AccountPools& pools, double rate,
                                                           std::int64_t days, Rng& rng) {
  const auto per = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::floor(rate * static_cast<double>(days))));
  const AmountModel model = amount_model(cfg);
  std::vector<Category> cats;
  const auto weights = category_weights(cfg, cats);
  std::vector<TransactionEdge> out;
  out.reserve(pools.fraud.size() * static_cast<std::size_t>(per));
  for (NodeIndex acct : pools.fraud) {
    for (std::int64_t i = 0; i < per; ++i) {
      const Category cat = cats[rng.weighted_index(weights)];
      const bool outgoing = rng.bernoulli(0.5);
      const Timestamp ts = business_hours_time(graph.window(), rng);
      const Money amount = sample_background_amount(cat, model, rng);
      out.push_back(everyday_edge(graph, pools, acct, cat, outgoing, amount, ts, rng));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<TransactionEdge> generate_counter_leakage(const Graph& graph, CounterLeakageKind kind,
                                                      const GraphConfig& cfg,
                                                      const AccountPools& pools,
                                                      std::int64_t target, Rng& rng) {
  std::vector<TransactionEdge> out;
  if (target <= 0) return out;
  const auto& base = kind == CounterLeakageKind::high_risk_activity && !pools.high_risk.empty()
                         ? pools.high_risk
                         : pools.legit;
  if (base.empty()) return out;

  // A share of fraud accounts is mixed in as unit owners.
  std::vector<NodeIndex> mixed = pools.fraud;
  rng.shuffle(std::span<NodeIndex>(mixed));
  const double mix = rng.uniform(cfg.background.fraud_mixing.min, cfg.background.fraud_mixing.max);
  mixed.resize(static_cast<std::size_t>(std::llround(mix * static_cast<double>(mixed.size()))));

  const AmountModel model = amount_model(cfg);
  const auto& bg = cfg.background;
  const TimeWindow w = graph.window();
  const NodeIndex cash = *graph.cash_node();
  std::vector<Category> cats;
  const auto weights = category_weights(cfg, cats);

  std::size_t unit = 0;
  while (static_cast<std::int64_t>(out.size()) < target) {
    const NodeIndex acct = unit < mixed.size() ? mixed[unit] : pick(base, rng);
    ++unit;
    switch (kind) {
      case CounterLeakageKind::bursts: {
        const auto n = static_cast<std::size_t>(rng.uniform_int(bg.burst_size.min, bg.burst_size.max));
        const auto times = schedule_burst(n, bg.burst_window, uniform_time(w, bg.burst_window, rng), rng);
        for (Timestamp t : times) {
          out.push_back(legit_edge(acct, pick_other(pools.business_accounts, acct, rng),
                                   sample_amount(AmountKind::payment, model, rng), t,
                                   Category::payment));
        }
        break;
      }
      case CounterLeakageKind::chains: {
        const auto hops = rng.uniform_int(bg.chain_hops.min, bg.chain_hops.max);
        Timestamp t = uniform_time(w, hops * 48 * kHour, rng);
        Money amt = sample_amount(AmountKind::transfer, model, rng);
        NodeIndex from = acct;
        std::set<NodeIndex> seen{acct};
        for (std::int64_t h = 0; h < hops; ++h) {
          NodeIndex to = pick(pools.legit, rng);
          for (int k = 0; k < 8 && seen.count(to); ++k) to = pick(pools.legit, rng);
          seen.insert(to);
          if (h > 0) {
            amt = amt.scaled(rng.uniform(0.95, 0.99));
            t += rng.uniform_int(kHour, 48 * kHour);
          }
          out.push_back(legit_edge(from, to, amt, t, Category::transfer));
          from = to;
        }
        break;
      }
      case CounterLeakageKind::rapid_flow: {
        const NodeIndex cash_acct = cash_account(graph, acct);
        const auto k = static_cast<std::size_t>(rng.uniform_int(2, 7));
        const Timestamp t0 = uniform_time(w, 24 * kHour + 24 * kHour + 72 * kHour, rng);
        const auto arrivals = schedule_burst(k, 24 * kHour, t0, rng);
        Money inflow;
        for (Timestamp t : arrivals) {
          const Money a = sample_amount(AmountKind::transfer, model, rng);
          inflow += a;
          out.push_back(legit_edge(pick_other(pools.legit, acct, rng), acct, a, t, Category::transfer));
        }
        const auto m = static_cast<std::size_t>(rng.uniform_int(2, 6));
        const Money total = inflow.scaled(rng.uniform(0.85, 0.95));
        const auto times =
            schedule_burst(m, 72 * kHour, arrivals.back() + rng.uniform_int(kHour, 24 * kHour), rng);
        Money left = total;
        for (std::size_t j = 0; j < m; ++j) {
          const Money part = j + 1 == m ? left : Money::from_cents(total.cents() / static_cast<std::int64_t>(m));
          left -= part;
          out.push_back(legit_edge(acct, cash_acct, part, times[j], Category::withdrawal));
        }
        break;
      }
      case CounterLeakageKind::cash_ops: {
        if (rng.bernoulli(0.3)) {
          const auto k = static_cast<std::size_t>(rng.uniform_int(bg.rapid_deposits.min, bg.rapid_deposits.max));
          const auto times = schedule_burst(k, bg.rapid_deposit_window,
                                            uniform_time(w, bg.rapid_deposit_window, rng), rng);
          for (Timestamp t : times) {
            out.push_back(legit_edge(cash, acct, sample_amount(AmountKind::deposit, model, rng), t,
                                     Category::deposit));
          }
        } else if (rng.bernoulli(0.5)) {
          out.push_back(legit_edge(cash, acct, sample_amount(AmountKind::deposit, model, rng),
                                   uniform_time(w, 0, rng), Category::deposit));
        } else {
          out.push_back(legit_edge(acct, cash_account(graph, acct),
                                   sample_amount(AmountKind::withdrawal, model, rng),
                                   uniform_time(w, 0, rng), Category::withdrawal));
        }
        break;
      }
      case CounterLeakageKind::structuring: {
        const std::size_t k = rng.bernoulli(0.5) ? static_cast<std::size_t>(rng.uniform_int(2, 4)) : 1;
        const auto times = k == 1 ? std::vector<Timestamp>{uniform_time(w, 0, rng)}
                                  : schedule_burst(k, bg.rapid_deposit_window,
                                                   uniform_time(w, bg.rapid_deposit_window, rng), rng);
        for (Timestamp t : times) {
          out.push_back(legit_edge(cash, acct, sample_structuring_amount(bg.legit_structuring_range, rng),
                                   t, Category::deposit));
        }
        break;
      }
      case CounterLeakageKind::high_risk_activity: {
        const auto k = rng.uniform_int(1, 5);
        for (std::int64_t j = 0; j < k; ++j) {
          const Category cat = cats[rng.weighted_index(weights)];
          out.push_back(everyday_edge(graph, pools, acct, cat, true,
                                      sample_amount(amount_kind_for(cat), model, rng),
                                      uniform_time(w, 0, rng), rng));
        }
        break;
      }
      case CounterLeakageKind::periodic: {
        const Seconds period = kLeakagePeriods[rng.index(kLeakagePeriods.size())];
        const NodeIndex to = pick_other(pools.legit, acct, rng);
        const Money base_amt = sample_amount(AmountKind::transfer, model, rng);
        const Timestamp t0 = w.start + rng.uniform_int(0, std::min<Seconds>(period, w.length() - 1));
        std::size_t n = 1;
        while (t0 + periodic_span(n + 1, period, kLeakageEpsilon) < w.end) ++n;
        for (Timestamp t : schedule_periodic(n, period, kLeakageEpsilon, t0, rng)) {
          out.push_back(legit_edge(acct, to, base_amt.scaled(rng.uniform(0.95, 1.05)), t,
                                   Category::transfer));
        }
        break;
      }
    }
  }
  return out;
}

}  // namespace amlgen
