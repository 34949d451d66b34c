#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "amlgen/money.hpp"
#include "amlgen/time.hpp"
#include "amlgen/types.hpp"

namespace amlgen {

// ---------------------------------------------------------------------------
// Small range helpers shared by both configuration files.

struct IntRange {
  std::int64_t min = 0;
  std::int64_t max = 0;
  [[nodiscard]] bool contains(std::int64_t v) const { return v >= min && v <= max; }
  friend bool operator==(const IntRange&, const IntRange&) = default;
};

struct RealRange {
  double min = 0.0;
  double max = 0.0;
  [[nodiscard]] bool contains(double v) const { return v >= min && v <= max; }
  friend bool operator==(const RealRange&, const RealRange&) = default;
};

struct DurationRange {
  Seconds min = 0;
  Seconds max = 0;
  [[nodiscard]] bool contains(Seconds v) const { return v >= min && v <= max; }
  friend bool operator==(const DurationRange&, const DurationRange&) = default;
};

struct MoneyRange {
  Money min;
  Money max;
  [[nodiscard]] bool contains(Money v) const { return v >= min && v <= max; }
  friend bool operator==(const MoneyRange&, const MoneyRange&) = default;
};

// ---------------------------------------------------------------------------
// Graph-level configuration.

struct CountryEntry {
  std::string code;
  bool high_risk = false;
  double weight = 0.0;
  friend bool operator==(const CountryEntry&, const CountryEntry&) = default;
};

struct OccupationEntry {
  std::string name;
  double weight = 0.0;
  bool high_risk = false;
  bool high_paid = false;
  friend bool operator==(const OccupationEntry&, const OccupationEntry&) = default;
};

struct BusinessCategoryEntry {
  std::string name;
  double weight = 0.0;
  bool cash_intensive = false;
  friend bool operator==(const BusinessCategoryEntry&, const BusinessCategoryEntry&) = default;
};

/// Log-normal amount distribution clipped to [min, max] (currency units).
struct LogNormalParams {
  double mu = 0.0;
  double sigma = 1.0;
  double min = 0.0;
  double max = 0.0;
  friend bool operator==(const LogNormalParams&, const LogNormalParams&) = default;
};

/// Weights of the additive entity risk score.
struct RiskWeights {
  double individual_base = 0.05;
  double business_base = 0.10;
  double high_risk_age = 0.15;
  double high_risk_occupation = 0.12;
  double cash_intensive_category = 0.25;
  double very_small_company = 0.10;
  double high_risk_jurisdiction = 0.20;
  double cap = 0.9;
  friend bool operator==(const RiskWeights&, const RiskWeights&) = default;
};

enum class SalarySchedule { monthly, biweekly, custom };

struct OutputFormats {
  bool csv = true;
  bool json = true;
  friend bool operator==(const OutputFormats&, const OutputFormats&) = default;
};

/// Legitimate-traffic knobs. Shares split the background edge budget that
/// remains after fraudster background has been allocated.
struct BackgroundConfig {
  double random_share = 0.80;
  double salary_share = 0.08;
  double high_value_share = 0.02;
  double counter_leakage_share = 0.10;

  /// Fraction of fraudulent accounts that also join the random-payment pool.
  double fraud_account_share = 0.5;
  /// Optional hard cap on random payments.
  std::optional<std::int64_t> transaction_budget;

  /// Probability that a random payment amount is replaced by a structuring draw.
  double structuring_share = 0.04;
  MoneyRange structuring_range{Money::from_cents(700000), Money::from_cents(999999)};
  MoneyRange legit_structuring_range{Money::from_cents(750000), Money::from_cents(999999)};

  SalarySchedule salary_schedule = SalarySchedule::monthly;
  std::vector<int> pay_days{1, 15, 30};
  Seconds salary_period = 14 * kDay;
  IntRange salary_recipients{1, 3};
  double salary_jitter = 0.05;

  /// Businesses with more employees than this count as high-value.
  std::int64_t high_value_min_employees = 10;

  RealRange fraud_mixing{0.50, 0.90};
  IntRange burst_size{5, 15};
  Seconds burst_window = 15 * kMinute;
  IntRange chain_hops{2, 5};
  IntRange rapid_deposits{3, 5};
  Seconds rapid_deposit_window = 4 * kHour;

  friend bool operator==(const BackgroundConfig&, const BackgroundConfig&) = default;
};

struct GraphConfig {
  std::int64_t individual_count = 1000;
  double business_ratio = 0.1;
  std::int64_t institution_count = 20;
  Date simulation_start = Date{std::chrono::sys_days{std::chrono::year{2025} / 1 / 1}};
  Date simulation_end = Date{std::chrono::sys_days{std::chrono::year{2025} / 12 / 31}};
  double target_illicit_ratio = 0.001;
  Money reporting_threshold = Money::from_cents(1000000);
  double per_account_daily_rate_cap = 2.0;
  std::uint64_t master_seed = 0;
  std::string currency = "EUR";
  std::string home_country = "NL";
  IntRange accounts_per_individual{1, 3};
  IntRange accounts_per_business{2, 4};
  std::map<Category, double> background_weights;
  std::map<AmountKind, LogNormalParams> amount_params;
  OutputFormats output_formats;
  std::vector<CountryEntry> country_table;
  std::vector<OccupationEntry> occupations;
  std::vector<BusinessCategoryEntry> business_categories;
  RiskWeights risk_weights;
  BackgroundConfig background;

  /// [simulation_start 00:00, simulation_end + 1 day 00:00).
  [[nodiscard]] TimeWindow window() const;
  [[nodiscard]] bool is_high_risk_country(const std::string& code) const;
  /// background_weights scaled to sum to one.
  [[nodiscard]] std::map<Category, double> normalized_background_weights() const;

  friend bool operator==(const GraphConfig&, const GraphConfig&) = default;
};

/// Built-in defaults for every table-valued key.
GraphConfig default_graph_config();

// ---------------------------------------------------------------------------
// Pattern-level configuration.

enum class LayeringPool { uniform, high_risk_cluster };
enum class TimingMode { burst, periodic, mixed };

struct LayeringConfig {
  bool enabled = true;
  std::int64_t h_min = 2;
  std::int64_t h_max = 5;
  double decay_min = 0.95;
  double decay_max = 0.99;
  Seconds hop_delay_min = 1 * kHour;
  Seconds hop_delay_max = 48 * kHour;
  LayeringPool pool = LayeringPool::uniform;
  friend bool operator==(const LayeringConfig&, const LayeringConfig&) = default;
};

struct OverseasTransfersConfig {
  std::int64_t instance_count = 0;
  LayeringConfig layering;
  IntRange transfers{4, 12};
  MoneyRange amount{Money::from_cents(500000), Money::from_cents(2000000)};
  IntRange destinations{2, 5};
  TimingMode timing = TimingMode::mixed;
  std::vector<Seconds> periods{7 * kDay, 14 * kDay, 30 * kDay};
  Seconds epsilon = 6 * kHour;
  Seconds burst_window = 48 * kHour;
  DurationRange deposit_lead{1 * kHour, 24 * kHour};
  friend bool operator==(const OverseasTransfersConfig&, const OverseasTransfersConfig&) = default;
};

struct RapidMovementConfig {
  std::int64_t instance_count = 0;
  LayeringConfig layering;
  IntRange sources{2, 7};
  Seconds inflow_window = 24 * kHour;
  DurationRange withdrawal_delay{1 * kHour, 24 * kHour};
  IntRange withdrawals{2, 6};
  Seconds withdrawal_window = 72 * kHour;
  RealRange outflow_ratio{0.85, 0.95};
  Seconds max_duration = 128 * kHour;
  friend bool operator==(const RapidMovementConfig&, const RapidMovementConfig&) = default;
};

struct FrontBusinessConfig {
  std::int64_t instance_count = 0;
  LayeringConfig layering;
  IntRange deposits{5, 15};
  MoneyRange deposit_amount{Money::from_cents(1500000), Money::from_cents(7500000)};
  Seconds deposit_window = 48 * kHour;
  DurationRange transfer_delay{30 * kMinute, 6 * kHour};
  RealRange transfer_ratio{0.80, 1.00};
  IntRange destinations{2, 5};
  friend bool operator==(const FrontBusinessConfig&, const FrontBusinessConfig&) = default;
};

struct SynchronisedConfig {
  std::int64_t instance_count = 0;
  IntRange coordinators{3, 8};
  Seconds sync_window = 2 * kHour;
  IntRange deposits_per_coordinator{1, 2};
  DurationRange transfer_delay{1 * kHour, 6 * kHour};
  RealRange transfer_ratio{0.85, 0.95};
  friend bool operator==(const SynchronisedConfig&, const SynchronisedConfig&) = default;
};

struct UTurnConfig {
  std::int64_t instance_count = 0;
  IntRange chain_entities{4, 7};
  MoneyRange initial_amount{Money::from_cents(1000000), Money::from_cents(10000000)};
  DurationRange hop_delay{1 * kDay, 5 * kDay};
  RealRange fee{0.01, 0.03};
  RealRange return_ratio{0.70, 0.90};
  friend bool operator==(const UTurnConfig&, const UTurnConfig&) = default;
};

struct PatternConfig {
  /// Abort on the first instance that cannot be placed instead of skipping it.
  bool strict = false;
  /// An entity takes part in at most one instance of each typology.
  bool exclusive_per_typology = true;
  /// Sub-threshold deposits are drawn from this fraction of the threshold.
  RealRange sub_threshold{0.70, 0.9999};
  OverseasTransfersConfig overseas_transfers;
  RapidMovementConfig rapid_movement;
  FrontBusinessConfig front_business;
  SynchronisedConfig synchronised;
  UTurnConfig u_turn;

  [[nodiscard]] std::int64_t total_instances() const;

  friend bool operator==(const PatternConfig&, const PatternConfig&) = default;
};

// ---------------------------------------------------------------------------
// Loading, validation, serialisation.

/// Parses graph-level YAML text. Throws ParseError, ValidationError, MissingSeed.
GraphConfig parse_graph_config(const std::string& yaml_text);
GraphConfig load_graph_config(const std::filesystem::path& path);

/// Parses pattern-level YAML text. Throws ParseError, ValidationError.
PatternConfig parse_pattern_config(const std::string& yaml_text);
PatternConfig load_pattern_config(const std::filesystem::path& path);

/// Throws ValidationError naming the offending key.
void validate(const GraphConfig& cfg);
void validate(const PatternConfig& cfg);

/// Cross-file sanity checks; never throws for well-formed inputs.
std::vector<std::string> validate_combined(const GraphConfig& g, const PatternConfig& p);

/// Fully explicit YAML; loading the output yields an equal value.
std::string to_yaml(const GraphConfig& cfg);
std::string to_yaml(const PatternConfig& cfg);

std::string_view to_string(SalarySchedule s);
std::string_view to_string(LayeringPool p);
std::string_view to_string(TimingMode t);

}  // namespace amlgen
