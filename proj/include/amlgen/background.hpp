#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "amlgen/config.hpp"
#include "amlgen/model.hpp"
#include "amlgen/rng.hpp"

namespace amlgen {

enum class CounterLeakageKind : std::uint8_t {
  bursts,
  chains,
  rapid_flow,
  cash_ops,
  structuring,
  high_risk_activity,
  periodic
};

inline constexpr std::array kAllCounterLeakageKinds{
    CounterLeakageKind::bursts,      CounterLeakageKind::chains,
    CounterLeakageKind::rapid_flow,  CounterLeakageKind::cash_ops,
    CounterLeakageKind::structuring, CounterLeakageKind::high_risk_activity,
    CounterLeakageKind::periodic};

std::string_view to_string(CounterLeakageKind k);
/// Throws UnknownKind.
CounterLeakageKind parse_counter_leakage_kind(std::string_view s);

struct AmountModel {
  std::map<AmountKind, LogNormalParams> params;
  MoneyRange structuring_range;
  double structuring_share = 0.04;
};

AmountModel amount_model(const GraphConfig& cfg);

/// exp(N(mu, sigma^2)) clipped to [min, max] and rounded to the cent.
/// Throws UnknownType if the kind has no parameters.
Money sample_amount(AmountKind kind, const AmountModel& model, Rng& rng);

/// Uniform over the structuring range, in whole cents.
Money sample_structuring_amount(const AmountModel& model, Rng& rng);
Money sample_structuring_amount(const MoneyRange& range, Rng& rng);

/// Amount used by random and fraudster background: a structuring draw with
/// probability structuring_share, otherwise sample_amount for the category.
Money sample_background_amount(Category category, const AmountModel& model, Rng& rng);

struct BackgroundBudget {
  std::int64_t fraud_edges = 0;
  std::int64_t total_target = 0;
  std::int64_t background_target = 0;
  std::int64_t random = 0;
  std::int64_t salary = 0;
  std::int64_t high_value = 0;
  std::int64_t fraudster = 0;
  std::map<CounterLeakageKind, std::int64_t> counter_leakage;
  /// Per-account daily rate r used by random and fraudster background.
  double effective_daily_rate = 0.0;
  bool cap_binds = false;
  /// F / (F + planned background); equals the target unless the cap binds.
  double achievable_ratio = 0.0;
  std::vector<std::string> warnings;

  [[nodiscard]] std::int64_t counter_leakage_total() const;
};

/// Splits total = round(F / ratio) into background allocations.
/// `accounts` is |A| for random payments, `fraud_accounts` the number of
/// fraudulent accounts. Throws InvalidRatio.
BackgroundBudget compute_background_budget(const GraphConfig& cfg, std::int64_t fraud_edges,
                                           std::size_t accounts, std::size_t fraud_accounts,
                                           std::int64_t days);

/// Budget used when there are no fraud edges to scale against: random
/// payments at kFallbackDailyRate, other patterns in proportion.
inline constexpr double kFallbackDailyRate = 0.1;
BackgroundBudget fallback_background_budget(const GraphConfig& cfg, std::size_t accounts,
                                            std::size_t fraud_accounts, std::int64_t days);

/// Account sets background generators draw from.
struct AccountPools {
  std::vector<NodeIndex> legit;           // non-cash, not fraudulent
  std::vector<NodeIndex> fraud;           // non-cash, fraudulent
  std::vector<NodeIndex> random_pool;     // legit plus a subset of fraud
  std::vector<NodeIndex> business_accounts;
  std::vector<NodeIndex> individual_accounts;
  std::vector<NodeIndex> high_value;      // high-paid individuals, businesses > N employees
  std::vector<NodeIndex> high_risk;       // accounts of entities in risk clusters
};

AccountPools build_account_pools(const Graph& graph, const GraphConfig& cfg, Rng& rng);

/// floor(r * d * |A|), optionally capped by a transaction budget.
std::int64_t random_payment_count(double rate, std::int64_t days, std::size_t accounts,
                                  std::optional<std::int64_t> budget);

/// `count` everyday transactions from the random pool. Generated in fixed
/// chunks with their own substreams, so output is independent of `threads`.
std::vector<TransactionEdge> generate_random_payments(const Graph& graph, const GraphConfig& cfg,
                                                      const AccountPools& pools,
                                                      std::int64_t count, const Rng& rng,
                                                      unsigned threads = 1);

/// floor(r_monthly * months * |A_high|) business-hour transfers with
/// amounts rounded to the nearest 100.
std::vector<TransactionEdge> generate_high_value(const Graph& graph, const GraphConfig& cfg,
                                                 const AccountPools& pools, double r_monthly,
                                                 double months, Rng& rng);

/// Pay dates for one payer under the configured schedule, as day starts.
std::vector<Timestamp> salary_dates(const GraphConfig& cfg);

/// Static employer -> employee links paid on every pay date. Links are added
/// until the next one would exceed `max_edges` (unbounded if nullopt).
std::vector<TransactionEdge> generate_salaries(const Graph& graph, const GraphConfig& cfg,
                                               Rng& rng,
                                               std::optional<std::int64_t> max_edges = std::nullopt);

/// max(1, floor(r * d)) legitimate-looking edges per fraudulent account.
std::vector<TransactionEdge> generate_fraudster_background(const Graph& graph,
                                                           const GraphConfig& cfg,
                                                           const AccountPools& pools, double rate,
                                                           std::int64_t days, Rng& rng);

/// Emits units of the given kind until at least `target` edges exist.
std::vector<TransactionEdge> generate_counter_leakage(const Graph& graph, CounterLeakageKind kind,
                                                      const GraphConfig& cfg,
                                                      const AccountPools& pools,
                                                      std::int64_t target, Rng& rng);

/// Uniform time inside 09:00-17:00 on a uniformly drawn day of the window.
Timestamp business_hours_time(const TimeWindow& w, Rng& rng);

}  // namespace amlgen
