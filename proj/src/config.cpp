#include "amlgen/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <regex>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "amlgen/error.hpp"

namespace amlgen {

namespace {

// ---------------------------------------------------------------------------
// Reading helpers. A Section wraps one YAML mapping, remembers its dotted
// path for error messages and rejects keys nobody asked for.

class Section {
 public:
  Section(YAML::Node node, std::string path) : node_(std::move(node)), path_(std::move(path)) {
    if (node_ && !node_.IsNull() && !node_.IsMap()) {
      throw ParseError("'" + display() + "' must be a mapping");
    }
  }

  [[nodiscard]] bool has(const std::string& key) const {
    seen_.insert(key);
    return node_ && node_.IsMap() && node_[key] && !node_[key].IsNull();
  }

  YAML::Node take(const std::string& key) {
    seen_.insert(key);
    return node_[key];
  }

  [[nodiscard]] std::string key_path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  Section child(const std::string& key) {
    seen_.insert(key);
    return {has(key) ? node_[key] : YAML::Node(), key_path(key)};
  }

  template <class T>
  void read(const std::string& key, T& out) {
    if (!has(key)) return;
    try {
      out = take(key).as<T>();
    } catch (const YAML::Exception&) {
      throw ParseError("'" + key_path(key) + "' has the wrong type");
    }
  }

  void read_duration(const std::string& key, Seconds& out) {
    if (!has(key)) return;
    out = parse_duration(scalar(key));
  }

  void read_money(const std::string& key, Money& out) {
    if (!has(key)) return;
    out = parse_money(scalar(key));
  }

  void read_date(const std::string& key, Date& out) {
    if (!has(key)) return;
    out = parse_date(scalar(key));
  }

  template <class Range, class Parse>
  void read_pair(const std::string& key, Range& out, Parse parse) {
    if (!has(key)) return;
    YAML::Node n = take(key);
    if (!n.IsSequence() || n.size() != 2) {
      throw ParseError("'" + key_path(key) + "' must be a two-element list [min, max]");
    }
    try {
      out.min = parse(n[0].as<std::string>());
      out.max = parse(n[1].as<std::string>());
    } catch (const YAML::Exception&) {
      throw ParseError("'" + key_path(key) + "' has the wrong type");
    }
  }

  void read_int_range(const std::string& key, IntRange& out) {
    read_pair(key, out, [&](const std::string& s) { return to_int(key, s); });
  }
  void read_real_range(const std::string& key, RealRange& out) {
    read_pair(key, out, [&](const std::string& s) { return to_real(key, s); });
  }
  void read_duration_range(const std::string& key, DurationRange& out) {
    read_pair(key, out, [](const std::string& s) { return parse_duration(s); });
  }
  void read_money_range(const std::string& key, MoneyRange& out) {
    read_pair(key, out, [](const std::string& s) { return parse_money(s); });
  }

  std::string scalar(const std::string& key) {
    YAML::Node n = take(key);
    if (!n.IsScalar()) throw ParseError("'" + key_path(key) + "' must be a scalar");
    return n.Scalar();
  }

  /// Throws if the mapping holds keys that were never read.
  void finish() const {
    if (!node_ || !node_.IsMap()) return;
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!seen_.count(key)) throw ValidationError("unknown key '" + key_path(key) + "'");
    }
  }

 private:
  [[nodiscard]] std::string display() const { return path_.empty() ? "<root>" : path_; }

  std::int64_t to_int(const std::string& key, const std::string& s) const {
    try {
      std::size_t used = 0;
      const auto v = std::stoll(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw ParseError("'" + key_path(key) + "' expects integers, got '" + s + "'");
  }
  double to_real(const std::string& key, const std::string& s) const {
    try {
      std::size_t used = 0;
      const auto v = std::stod(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw ParseError("'" + key_path(key) + "' expects numbers, got '" + s + "'");
  }

  YAML::Node node_;
  std::string path_;
  mutable std::set<std::string> seen_;
};

YAML::Node parse_document(const std::string& text) {
  try {
    YAML::Node root = YAML::Load(text);
    if (root.IsNull()) return YAML::Node(YAML::NodeType::Map);
    if (!root.IsMap()) throw ParseError("configuration root must be a mapping");
    return root;
  } catch (const YAML::Exception& e) {
    throw ParseError(std::string("malformed YAML: ") + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open configuration file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ValidationError("'" + key + "': " + what);
}

SalarySchedule parse_salary_schedule(const std::string& s, const std::string& key) {
  if (s == "monthly") return SalarySchedule::monthly;
  if (s == "biweekly") return SalarySchedule::biweekly;
  if (s == "custom") return SalarySchedule::custom;
  throw ValidationError("'" + key + "': expected monthly, biweekly or custom");
}

LayeringPool parse_pool(const std::string& s, const std::string& key) {
  if (s == "uniform") return LayeringPool::uniform;
  if (s == "high_risk_cluster") return LayeringPool::high_risk_cluster;
  throw ValidationError("'" + key + "': expected uniform or high_risk_cluster");
}

TimingMode parse_timing(const std::string& s, const std::string& key) {
  if (s == "burst") return TimingMode::burst;
  if (s == "periodic") return TimingMode::periodic;
  if (s == "mixed") return TimingMode::mixed;
  throw ValidationError("'" + key + "': expected burst, periodic or mixed");
}

// ---------------------------------------------------------------------------
// Graph config sections.

void read_background(Section s, BackgroundConfig& b) {
  s.read("random_share", b.random_share);
  s.read("salary_share", b.salary_share);
  s.read("high_value_share", b.high_value_share);
  s.read("counter_leakage_share", b.counter_leakage_share);
  s.read("fraud_account_share", b.fraud_account_share);
  if (s.has("transaction_budget")) {
    std::int64_t budget = 0;
    s.read("transaction_budget", budget);
    b.transaction_budget = budget;
  } else {
    s.take("transaction_budget");
  }
  s.read("structuring_share", b.structuring_share);
  s.read_money_range("structuring_range", b.structuring_range);
  s.read_money_range("legit_structuring_range", b.legit_structuring_range);
  if (s.has("salary_schedule")) {
    b.salary_schedule = parse_salary_schedule(s.scalar("salary_schedule"),
                                              s.key_path("salary_schedule"));
  }
  s.read("pay_days", b.pay_days);
  s.read_duration("salary_period", b.salary_period);
  s.read_int_range("salary_recipients", b.salary_recipients);
  s.read("salary_jitter", b.salary_jitter);
  s.read("high_value_min_employees", b.high_value_min_employees);
  s.read_real_range("fraud_mixing", b.fraud_mixing);
  s.read_int_range("burst_size", b.burst_size);
  s.read_duration("burst_window", b.burst_window);
  s.read_int_range("chain_hops", b.chain_hops);
  s.read_int_range("rapid_deposits", b.rapid_deposits);
  s.read_duration("rapid_deposit_window", b.rapid_deposit_window);
  s.finish();
}

void read_risk_weights(Section s, RiskWeights& w) {
  s.read("individual_base", w.individual_base);
  s.read("business_base", w.business_base);
  s.read("high_risk_age", w.high_risk_age);
  s.read("high_risk_occupation", w.high_risk_occupation);
  s.read("cash_intensive_category", w.cash_intensive_category);
  s.read("very_small_company", w.very_small_company);
  s.read("high_risk_jurisdiction", w.high_risk_jurisdiction);
  s.read("cap", w.cap);
  s.finish();
}

template <class Entry, class Fill>
void read_list(Section& parent, const std::string& key, std::vector<Entry>& out, Fill fill) {
  if (!parent.has(key)) {
    parent.take(key);
    return;
  }
  YAML::Node list = parent.take(key);
  if (!list.IsSequence()) throw ParseError("'" + parent.key_path(key) + "' must be a list");
  out.clear();
  for (std::size_t i = 0; i < list.size(); ++i) {
    Section item(list[i], parent.key_path(key) + "[" + std::to_string(i) + "]");
    Entry e;
    fill(item, e);
    item.finish();
    out.push_back(std::move(e));
  }
}

// ---------------------------------------------------------------------------
// Pattern config sections.

void read_layering(Section s, LayeringConfig& l) {
  s.read("enabled", l.enabled);
  s.read("h_min", l.h_min);
  s.read("h_max", l.h_max);
  s.read("decay_min", l.decay_min);
  s.read("decay_max", l.decay_max);
  s.read_duration("hop_delay_min", l.hop_delay_min);
  s.read_duration("hop_delay_max", l.hop_delay_max);
  if (s.has("pool")) l.pool = parse_pool(s.scalar("pool"), s.key_path("pool"));
  s.finish();
}

void read_periods(Section& s, const std::string& key, std::vector<Seconds>& out) {
  if (!s.has(key)) return;
  YAML::Node n = s.take(key);
  if (!n.IsSequence()) throw ParseError("'" + s.key_path(key) + "' must be a list");
  out.clear();
  for (const auto& item : n) out.push_back(parse_duration(item.as<std::string>()));
}

void validate_layering(const LayeringConfig& l, const std::string& key) {
  require(l.h_min >= 1 && l.h_min <= l.h_max, key + ".h_min/h_max", "need 1 <= h_min <= h_max");
  require(l.decay_min > 0.0 && l.decay_min <= l.decay_max, key + ".decay_min",
          "need 0 < decay_min <= decay_max");
  require(l.decay_max < 1.0, key + ".decay_max", "must be strictly below 1");
  require(l.hop_delay_min >= 0 && l.hop_delay_min <= l.hop_delay_max,
          key + ".hop_delay_min/hop_delay_max", "need 0 <= hop_delay_min <= hop_delay_max");
}

void require_range(const IntRange& r, const std::string& key, std::int64_t floor) {
  require(r.min >= floor && r.min <= r.max, key,
          "need " + std::to_string(floor) + " <= min <= max");
}
void require_range(const RealRange& r, const std::string& key, double lo, double hi) {
  require(r.min >= lo && r.min <= r.max && r.max <= hi, key, "need min <= max within bounds");
}
void require_range(const MoneyRange& r, const std::string& key) {
  require(r.min.cents() > 0 && r.min <= r.max, key, "need 0 < min <= max");
}
void require_range(const DurationRange& r, const std::string& key) {
  require(r.min >= 0 && r.min <= r.max, key, "need 0 <= min <= max");
}

// ---------------------------------------------------------------------------
// Emission helpers.

void emit_range(YAML::Emitter& out, const IntRange& r) {
  out << YAML::Flow << YAML::BeginSeq << r.min << r.max << YAML::EndSeq;
}
void emit_range(YAML::Emitter& out, const RealRange& r) {
  out << YAML::Flow << YAML::BeginSeq << r.min << r.max << YAML::EndSeq;
}
void emit_range(YAML::Emitter& out, const DurationRange& r) {
  out << YAML::Flow << YAML::BeginSeq << format_duration(r.min) << format_duration(r.max)
      << YAML::EndSeq;
}
void emit_range(YAML::Emitter& out, const MoneyRange& r) {
  out << YAML::Flow << YAML::BeginSeq << r.min.str() << r.max.str() << YAML::EndSeq;
}

void emit_layering(YAML::Emitter& out, const LayeringConfig& l) {
  out << YAML::BeginMap;
  out << YAML::Key << "enabled" << YAML::Value << l.enabled;
  out << YAML::Key << "h_min" << YAML::Value << l.h_min;
  out << YAML::Key << "h_max" << YAML::Value << l.h_max;
  out << YAML::Key << "decay_min" << YAML::Value << l.decay_min;
  out << YAML::Key << "decay_max" << YAML::Value << l.decay_max;
  out << YAML::Key << "hop_delay_min" << YAML::Value << format_duration(l.hop_delay_min);
  out << YAML::Key << "hop_delay_max" << YAML::Value << format_duration(l.hop_delay_max);
  out << YAML::Key << "pool" << YAML::Value << std::string(to_string(l.pool));
  out << YAML::EndMap;
}

void configure(YAML::Emitter& out) {
  out.SetDoublePrecision(17);
  out.SetFloatPrecision(9);
}

// Rewrites 17-digit doubles in the shortest form that parses back to the same value.
std::string shorten_reals(const std::string& text) {
  static const std::regex real(R"(-?\d+\.\d{6,}(e-?\d+)?)");
  std::string out;
  auto last = text.cbegin();
  for (auto it = std::sregex_iterator(text.begin(), text.end(), real); it != std::sregex_iterator();
       ++it) {
    out.append(last, text.cbegin() + it->position());
    const double v = std::strtod(it->str().c_str(), nullptr);
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    std::string shortest(buf, res.ptr);
    if (shortest.find_first_of(".e") == std::string::npos) shortest += ".0";
    out += shortest;
    last = text.cbegin() + it->position() + it->length();
  }
  out.append(last, text.cend());
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view to_string(SalarySchedule s) {
  switch (s) {
    case SalarySchedule::monthly: return "monthly";
    case SalarySchedule::biweekly: return "biweekly";
    case SalarySchedule::custom: return "custom";
  }
  return "?";
}

std::string_view to_string(LayeringPool p) {
  return p == LayeringPool::uniform ? "uniform" : "high_risk_cluster";
}

std::string_view to_string(TimingMode t) {
  switch (t) {
    case TimingMode::burst: return "burst";
    case TimingMode::periodic: return "periodic";
    case TimingMode::mixed: return "mixed";
  }
  return "?";
}

TimeWindow GraphConfig::window() const {
  return TimeWindow{simulation_start.midnight(), simulation_end.midnight() + kDay};
}

bool GraphConfig::is_high_risk_country(const std::string& code) const {
  for (const auto& c : country_table) {
    if (c.code == code) return c.high_risk;
  }
  return false;
}

std::map<Category, double> GraphConfig::normalized_background_weights() const {
  double total = 0.0;
  for (const auto& [_, w] : background_weights) total += w;
  std::map<Category, double> out;
  for (const auto& [c, w] : background_weights) out[c] = total > 0.0 ? w / total : 0.0;
  return out;
}

std::int64_t PatternConfig::total_instances() const {
  return overseas_transfers.instance_count + rapid_movement.instance_count +
         front_business.instance_count + synchronised.instance_count + u_turn.instance_count;
}

GraphConfig default_graph_config() {
  GraphConfig g;
  g.background_weights = {{Category::payment, 0.68},
                          {Category::transfer, 0.12},
                          {Category::withdrawal, 0.08},
                          {Category::deposit, 0.11}};
  g.amount_params = {
      {AmountKind::payment, {3.8, 1.2, 1.0, 25000.0}},
      {AmountKind::transfer, {5.5, 2.0, 1.0, 1000000.0}},
      {AmountKind::withdrawal, {4.8, 0.9, 10.0, 5000.0}},
      {AmountKind::deposit, {5.3, 1.5, 5.0, 100000.0}},
      {AmountKind::salary, {7.8, 0.6, 500.0, 25000.0}},
      {AmountKind::high_value, {9.9, 0.8, 2000.0, 1000000.0}},
  };
  g.country_table = {
      {"NL", false, 0.800}, {"DE", false, 0.035}, {"BE", false, 0.030}, {"FR", false, 0.025},
      {"GB", false, 0.020}, {"US", false, 0.020}, {"ES", false, 0.010}, {"IR", true, 0.010},
      {"MM", true, 0.010},  {"NG", true, 0.010},  {"PA", true, 0.010},  {"KY", true, 0.010},
      {"VN", true, 0.010},
  };
  g.occupations = {
      {"teacher", 0.090, false, false},
      {"nurse", 0.080, false, false},
      {"engineer", 0.080, false, true},
      {"retail_worker", 0.100, false, false},
      {"student", 0.080, false, false},
      {"retired", 0.100, false, false},
      {"driver", 0.060, false, false},
      {"chef", 0.040, false, false},
      {"clerk", 0.070, false, false},
      {"software_developer", 0.060, false, true},
      {"physician", 0.030, false, true},
      {"construction_worker", 0.060, false, false},
      {"sales_manager", 0.030, false, true},
      {"executive", 0.020, false, true},
      {"accountant", 0.025, true, true},
      {"lawyer", 0.020, true, true},
      {"financial_advisor", 0.015, true, true},
      {"bank_employee", 0.020, true, false},
      {"real_estate_agent", 0.015, true, false},
      {"car_dealer", 0.010, true, false},
      {"jeweller", 0.005, true, false},
  };
  g.business_categories = {
      {"restaurant", 0.12, true},     {"bar", 0.05, true},          {"car_wash", 0.03, true},
      {"convenience_store", 0.06, true}, {"beauty_salon", 0.04, true},
      {"retail_clothing", 0.10, false}, {"construction", 0.10, false},
      {"consulting", 0.12, false},    {"software", 0.08, false},    {"logistics", 0.08, false},
      {"manufacturing", 0.08, false}, {"healthcare", 0.06, false},  {"real_estate", 0.04, false},
      {"wholesale", 0.04, false},
  };
  return g;
}

GraphConfig parse_graph_config(const std::string& yaml_text) {
  YAML::Node root = parse_document(yaml_text);
  Section s(root, "");
  GraphConfig g = default_graph_config();

  if (!s.has("master_seed")) {
    throw MissingSeed("'master_seed' is required; generation is only reproducible with an "
                      "explicit seed");
  }
  {
    const std::string seed = s.scalar("master_seed");
    try {
      std::size_t used = 0;
      if (!seed.empty() && seed[0] == '-') throw std::invalid_argument("negative");
      g.master_seed = std::stoull(seed, &used, 10);
      if (used != seed.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError("'master_seed' must be an unsigned 64-bit integer");
    }
  }
  s.read("individual_count", g.individual_count);
  s.read("business_ratio", g.business_ratio);
  s.read("institution_count", g.institution_count);
  s.read_date("simulation_start", g.simulation_start);
  s.read_date("simulation_end", g.simulation_end);
  s.read("target_illicit_ratio", g.target_illicit_ratio);
  s.read_money("reporting_threshold", g.reporting_threshold);
  s.read("per_account_daily_rate_cap", g.per_account_daily_rate_cap);
  s.read("currency", g.currency);
  s.read("home_country", g.home_country);
  s.read_int_range("accounts_per_individual", g.accounts_per_individual);
  s.read_int_range("accounts_per_business", g.accounts_per_business);

  if (s.has("background_weights")) {
    Section w = s.child("background_weights");
    g.background_weights.clear();
    for (Category c : {Category::payment, Category::transfer, Category::withdrawal,
                       Category::deposit}) {
      const std::string key(to_string(c));
      if (w.has(key)) {
        double v = 0.0;
        w.read(key, v);
        g.background_weights[c] = v;
      }
    }
    w.finish();
  } else {
    s.take("background_weights");
  }

  {
    Section params = s.child("amount_params");
    for (AmountKind k : kAllAmountKinds) {
      const std::string key(to_string(k));
      if (!params.has(key)) continue;
      Section p = params.child(key);
      auto& lp = g.amount_params[k];
      p.read("mu", lp.mu);
      p.read("sigma", lp.sigma);
      p.read("min", lp.min);
      p.read("max", lp.max);
      p.finish();
    }
    params.finish();
  }
  {
    Section f = s.child("output_formats");
    f.read("csv", g.output_formats.csv);
    f.read("json", g.output_formats.json);
    f.finish();
  }
  read_list(s, "countries", g.country_table, [](Section& item, CountryEntry& e) {
    item.read("code", e.code);
    item.read("high_risk", e.high_risk);
    item.read("weight", e.weight);
  });
  read_list(s, "occupations", g.occupations, [](Section& item, OccupationEntry& e) {
    item.read("name", e.name);
    item.read("weight", e.weight);
    item.read("high_risk", e.high_risk);
    item.read("high_paid", e.high_paid);
  });
  read_list(s, "business_categories", g.business_categories,
            [](Section& item, BusinessCategoryEntry& e) {
              item.read("name", e.name);
              item.read("weight", e.weight);
              item.read("cash_intensive", e.cash_intensive);
            });
  read_risk_weights(s.child("risk_weights"), g.risk_weights);
  read_background(s.child("background"), g.background);
  s.finish();

  validate(g);
  return g;
}

GraphConfig load_graph_config(const std::filesystem::path& path) {
  return parse_graph_config(read_file(path));
}

void validate(const GraphConfig& g) {
  require(g.individual_count > 0, "individual_count", "must be positive");
  require(g.business_ratio >= 0.0 && g.business_ratio <= 1.0, "business_ratio",
          "must lie in [0, 1]");
  require(g.institution_count > 0, "institution_count", "must be positive");
  require(g.simulation_start < g.simulation_end, "simulation_end",
          "must be after simulation_start");
  require(g.target_illicit_ratio > 0.0 && g.target_illicit_ratio < 0.5, "target_illicit_ratio",
          "must lie in (0, 0.5)");
  require(g.reporting_threshold.cents() > 0, "reporting_threshold", "must be positive");
  require(g.per_account_daily_rate_cap >= 0.0, "per_account_daily_rate_cap",
          "must be non-negative");
  require(!g.currency.empty(), "currency", "must not be empty");
  require_range(g.accounts_per_individual, "accounts_per_individual", 1);
  require_range(g.accounts_per_business, "accounts_per_business", 1);

  double weight_sum = 0.0;
  for (const auto& [c, w] : g.background_weights) {
    require(w >= 0.0, "background_weights." + std::string(to_string(c)), "must be non-negative");
    require(c != Category::salary, "background_weights.salary",
            "salary is scheduled separately");
    weight_sum += w;
  }
  require(weight_sum > 0.0, "background_weights", "must not all be zero");

  for (AmountKind k : kAllAmountKinds) {
    const std::string key = "amount_params." + std::string(to_string(k));
    auto it = g.amount_params.find(k);
    require(it != g.amount_params.end(), key, "missing");
    const auto& p = it->second;
    require(p.sigma > 0.0, key + ".sigma", "must be positive");
    require(p.min >= 0.0, key + ".min", "must be non-negative");
    const double median = std::exp(p.mu);
    require(p.min <= median && median <= p.max, key, "need min <= exp(mu) <= max");
  }

  require(!g.country_table.empty(), "countries", "must not be empty");
  std::set<std::string> codes;
  double country_sum = 0.0;
  bool has_home = false;
  bool has_overseas = false;
  for (const auto& c : g.country_table) {
    require(!c.code.empty(), "countries", "entries need a code");
    require(codes.insert(c.code).second, "countries", "duplicate code '" + c.code + "'");
    require(c.weight >= 0.0, "countries." + c.code + ".weight", "must be non-negative");
    country_sum += c.weight;
    if (c.code == g.home_country) {
      has_home = true;
    } else if (c.weight > 0.0) {
      has_overseas = true;
    }
  }
  require(country_sum > 0.0, "countries", "weights must not all be zero");
  require(has_home, "home_country", "must appear in the country table");
  require(has_overseas, "countries", "need at least one overseas country with positive weight");

  auto check_catalogue = [](const auto& list, const std::string& key) {
    require(!list.empty(), key, "must not be empty");
    double sum = 0.0;
    for (const auto& e : list) {
      require(!e.name.empty(), key, "entries need a name");
      require(e.weight >= 0.0, key + "." + e.name + ".weight", "must be non-negative");
      sum += e.weight;
    }
    require(sum > 0.0, key, "weights must not all be zero");
  };
  check_catalogue(g.occupations, "occupations");
  check_catalogue(g.business_categories, "business_categories");

  const auto& w = g.risk_weights;
  for (double v : {w.individual_base, w.business_base, w.high_risk_age, w.high_risk_occupation,
                   w.cash_intensive_category, w.very_small_company, w.high_risk_jurisdiction}) {
    require(v >= 0.0, "risk_weights", "weights must be non-negative");
  }
  require(w.cap > 0.0 && w.cap <= 1.0, "risk_weights.cap", "must lie in (0, 1]");

  const auto& b = g.background;
  for (double v : {b.random_share, b.salary_share, b.high_value_share, b.counter_leakage_share}) {
    require(v >= 0.0, "background.*_share", "shares must be non-negative");
  }
  require(b.random_share + b.salary_share + b.high_value_share + b.counter_leakage_share > 0.0,
          "background", "shares must not all be zero");
  require(b.fraud_account_share >= 0.0 && b.fraud_account_share <= 1.0,
          "background.fraud_account_share", "must lie in [0, 1]");
  require(!b.transaction_budget || *b.transaction_budget >= 0, "background.transaction_budget",
          "must be non-negative");
  require(b.structuring_share >= 0.0 && b.structuring_share <= 1.0,
          "background.structuring_share", "must lie in [0, 1]");
  require_range(b.structuring_range, "background.structuring_range");
  require_range(b.legit_structuring_range, "background.legit_structuring_range");
  require(!b.pay_days.empty(), "background.pay_days", "must not be empty");
  for (int d : b.pay_days) require(d >= 1 && d <= 31, "background.pay_days", "days lie in 1..31");
  require(b.salary_period > 0, "background.salary_period", "must be positive");
  require_range(b.salary_recipients, "background.salary_recipients", 1);
  require(b.salary_jitter >= 0.0 && b.salary_jitter < 1.0, "background.salary_jitter",
          "must lie in [0, 1)");
  require(b.high_value_min_employees >= 0, "background.high_value_min_employees",
          "must be non-negative");
  require_range(b.fraud_mixing, "background.fraud_mixing", 0.0, 1.0);
  require_range(b.burst_size, "background.burst_size", 1);
  require(b.burst_window > 0, "background.burst_window", "must be positive");
  require_range(b.chain_hops, "background.chain_hops", 1);
  require_range(b.rapid_deposits, "background.rapid_deposits", 1);
  require(b.rapid_deposit_window > 0, "background.rapid_deposit_window", "must be positive");
}

PatternConfig parse_pattern_config(const std::string& yaml_text) {
  YAML::Node root = parse_document(yaml_text);
  Section s(root, "");
  PatternConfig p;
  s.read("strict", p.strict);
  s.read("exclusive_per_typology", p.exclusive_per_typology);
  s.read_real_range("sub_threshold", p.sub_threshold);

  LayeringConfig base;
  if (s.has("layering")) read_layering(s.child("layering"), base);
  else s.take("layering");
  p.overseas_transfers.layering = base;
  p.rapid_movement.layering = base;
  p.front_business.layering = base;

  {
    Section o = s.child("overseas_transfers");
    auto& c = p.overseas_transfers;
    o.read("instance_count", c.instance_count);
    if (o.has("layering")) read_layering(o.child("layering"), c.layering);
    else o.take("layering");
    o.read_int_range("transfers", c.transfers);
    o.read_money_range("amount", c.amount);
    o.read_int_range("destinations", c.destinations);
    if (o.has("timing")) c.timing = parse_timing(o.scalar("timing"), o.key_path("timing"));
    read_periods(o, "periods", c.periods);
    o.read_duration("epsilon", c.epsilon);
    o.read_duration("burst_window", c.burst_window);
    o.read_duration_range("deposit_lead", c.deposit_lead);
    o.finish();
  }
  {
    Section r = s.child("rapid_movement");
    auto& c = p.rapid_movement;
    r.read("instance_count", c.instance_count);
    if (r.has("layering")) read_layering(r.child("layering"), c.layering);
    else r.take("layering");
    r.read_int_range("sources", c.sources);
    r.read_duration("inflow_window", c.inflow_window);
    r.read_duration_range("withdrawal_delay", c.withdrawal_delay);
    r.read_int_range("withdrawals", c.withdrawals);
    r.read_duration("withdrawal_window", c.withdrawal_window);
    r.read_real_range("outflow_ratio", c.outflow_ratio);
    r.read_duration("max_duration", c.max_duration);
    r.finish();
  }
  {
    Section f = s.child("front_business");
    auto& c = p.front_business;
    f.read("instance_count", c.instance_count);
    if (f.has("layering")) read_layering(f.child("layering"), c.layering);
    else f.take("layering");
    f.read_int_range("deposits", c.deposits);
    f.read_money_range("deposit_amount", c.deposit_amount);
    f.read_duration("deposit_window", c.deposit_window);
    f.read_duration_range("transfer_delay", c.transfer_delay);
    f.read_real_range("transfer_ratio", c.transfer_ratio);
    f.read_int_range("destinations", c.destinations);
    f.finish();
  }
  {
    Section y = s.child("synchronised");
    auto& c = p.synchronised;
    y.read("instance_count", c.instance_count);
    if (y.has("layering")) {
      LayeringConfig ignored;
      read_layering(y.child("layering"), ignored);
      if (ignored.enabled) {
        throw ValidationError("'synchronised.layering.enabled': synchronised transactions "
                              "are direct deposits and cannot be layered");
      }
    } else {
      y.take("layering");
    }
    y.read_int_range("coordinators", c.coordinators);
    y.read_duration("sync_window", c.sync_window);
    y.read_int_range("deposits_per_coordinator", c.deposits_per_coordinator);
    y.read_duration_range("transfer_delay", c.transfer_delay);
    y.read_real_range("transfer_ratio", c.transfer_ratio);
    y.finish();
  }
  {
    Section u = s.child("u_turn");
    auto& c = p.u_turn;
    u.read("instance_count", c.instance_count);
    u.read_int_range("chain_entities", c.chain_entities);
    u.read_money_range("initial_amount", c.initial_amount);
    u.read_duration_range("hop_delay", c.hop_delay);
    u.read_real_range("fee", c.fee);
    u.read_real_range("return_ratio", c.return_ratio);
    u.finish();
  }
  s.finish();

  validate(p);
  return p;
}

PatternConfig load_pattern_config(const std::filesystem::path& path) {
  return parse_pattern_config(read_file(path));
}

void validate(const PatternConfig& p) {
  require(p.sub_threshold.min > 0.0 && p.sub_threshold.min <= p.sub_threshold.max &&
              p.sub_threshold.max < 1.0,
          "sub_threshold", "need 0 < min <= max < 1");

  const auto& o = p.overseas_transfers;
  require(o.instance_count >= 0, "overseas_transfers.instance_count", "must be non-negative");
  validate_layering(o.layering, "overseas_transfers.layering");
  require_range(o.transfers, "overseas_transfers.transfers", 1);
  require_range(o.amount, "overseas_transfers.amount");
  require_range(o.destinations, "overseas_transfers.destinations", 1);
  require(!o.periods.empty(), "overseas_transfers.periods", "must not be empty");
  require(o.epsilon >= 0, "overseas_transfers.epsilon", "must be non-negative");
  for (Seconds period : o.periods) {
    require(period > o.epsilon, "overseas_transfers.periods", "each period must exceed epsilon");
  }
  require(o.burst_window > 0, "overseas_transfers.burst_window", "must be positive");
  require_range(o.deposit_lead, "overseas_transfers.deposit_lead");

  const auto& r = p.rapid_movement;
  require(r.instance_count >= 0, "rapid_movement.instance_count", "must be non-negative");
  validate_layering(r.layering, "rapid_movement.layering");
  require_range(r.sources, "rapid_movement.sources", 1);
  require(r.inflow_window > 0, "rapid_movement.inflow_window", "must be positive");
  require_range(r.withdrawal_delay, "rapid_movement.withdrawal_delay");
  require_range(r.withdrawals, "rapid_movement.withdrawals", 1);
  require(r.withdrawal_window > 0, "rapid_movement.withdrawal_window", "must be positive");
  require_range(r.outflow_ratio, "rapid_movement.outflow_ratio", 0.0, 1.0);
  require(r.inflow_window + r.withdrawal_delay.max + r.withdrawal_window < r.max_duration,
          "rapid_movement.max_duration",
          "must exceed inflow_window + withdrawal_delay.max + withdrawal_window");

  const auto& f = p.front_business;
  require(f.instance_count >= 0, "front_business.instance_count", "must be non-negative");
  validate_layering(f.layering, "front_business.layering");
  require_range(f.deposits, "front_business.deposits", 1);
  require_range(f.deposit_amount, "front_business.deposit_amount");
  require(f.deposit_window > 0, "front_business.deposit_window", "must be positive");
  require_range(f.transfer_delay, "front_business.transfer_delay");
  require_range(f.transfer_ratio, "front_business.transfer_ratio", 0.0, 1.0);
  require(f.transfer_ratio.min > 0.0, "front_business.transfer_ratio", "must be positive");
  require_range(f.destinations, "front_business.destinations", 1);

  const auto& y = p.synchronised;
  require(y.instance_count >= 0, "synchronised.instance_count", "must be non-negative");
  require_range(y.coordinators, "synchronised.coordinators", 2);
  require(y.sync_window > 0, "synchronised.sync_window", "must be positive");
  require_range(y.deposits_per_coordinator, "synchronised.deposits_per_coordinator", 1);
  require_range(y.transfer_delay, "synchronised.transfer_delay");
  require_range(y.transfer_ratio, "synchronised.transfer_ratio", 0.0, 1.0);
  require(y.transfer_ratio.min > 0.0, "synchronised.transfer_ratio", "must be positive");

  const auto& u = p.u_turn;
  require(u.instance_count >= 0, "u_turn.instance_count", "must be non-negative");
  require_range(u.chain_entities, "u_turn.chain_entities", 3);
  require_range(u.initial_amount, "u_turn.initial_amount");
  require_range(u.hop_delay, "u_turn.hop_delay");
  require(u.fee.min >= 0.0 && u.fee.min <= u.fee.max && u.fee.max < 1.0, "u_turn.fee",
          "need 0 <= min <= max < 1");
  require_range(u.return_ratio, "u_turn.return_ratio", 0.0, 1.0);
  require(u.return_ratio.min > 0.0, "u_turn.return_ratio", "must be positive");
}

std::vector<std::string> validate_combined(const GraphConfig& g, const PatternConfig& p) {
  std::vector<std::string> warnings;
  const std::int64_t total = p.total_instances();
  if (total == 0) {
    warnings.emplace_back("no fraud will be injected: every instance_count is zero");
  }

  // Primary role demand per instance, using the upper end of each range.
  const std::int64_t demand =
      p.overseas_transfers.instance_count * (1 + p.overseas_transfers.destinations.max) +
      p.rapid_movement.instance_count * (1 + p.rapid_movement.sources.max) +
      p.front_business.instance_count * (1 + p.front_business.destinations.max) +
      p.synchronised.instance_count * (1 + p.synchronised.coordinators.max) +
      p.u_turn.instance_count * p.u_turn.chain_entities.max;
  const auto businesses =
      static_cast<std::int64_t>(std::llround(g.business_ratio * g.individual_count));
  const std::int64_t entities = g.individual_count + businesses;
  if (demand > entities) {
    warnings.push_back("insufficient eligible entities likely: patterns may bind up to " +
                       std::to_string(demand) + " entities but the population holds " +
                       std::to_string(entities));
  }
  if (p.front_business.instance_count > 0 && businesses == 0) {
    warnings.emplace_back("front_business instances requested but business_ratio yields no "
                          "businesses");
  }
  if (p.synchronised.instance_count > 0 || p.overseas_transfers.instance_count > 0) {
    const Money deposit_max = g.reporting_threshold.scaled(p.sub_threshold.max);
    if (deposit_max >= g.reporting_threshold) {
      warnings.emplace_back("sub_threshold.max rounds to the reporting threshold; structured "
                            "deposits may reach it");
    }
  }
  if (p.rapid_movement.instance_count > 0 && p.rapid_movement.layering.enabled &&
      p.rapid_movement.layering.hop_delay_max * p.rapid_movement.layering.h_max >
          p.rapid_movement.max_duration) {
    warnings.emplace_back("rapid_movement layering hops may extend upstream of the "
                          "max_duration bound; the bound applies to arrivals and withdrawals");
  }
  if (p.front_business.instance_count > 0 &&
      p.front_business.deposit_amount.max > g.reporting_threshold.scaled(10.0)) {
    warnings.emplace_back("front_business deposit amounts exceed ten times the reporting "
                          "threshold");
  }
  for (const auto& [kind, params] : g.amount_params) {
    if (params.sigma < 0.6) {
      warnings.push_back("amount_params." + std::string(to_string(kind)) +
                         ".sigma below 0.6 produces unrealistically light tails");
    }
  }
  const auto days = g.window().days();
  const std::int64_t longest_periodic =
      p.overseas_transfers.transfers.min *
      (p.overseas_transfers.periods.empty()
           ? 0
           : *std::min_element(p.overseas_transfers.periods.begin(),
                               p.overseas_transfers.periods.end()));
  if (p.overseas_transfers.instance_count > 0 && longest_periodic > days * kDay) {
    warnings.emplace_back("simulation window too short for periodic overseas transfers; "
                          "burst timing will be used instead");
  }
  return warnings;
}

std::string to_yaml(const GraphConfig& g) {
  YAML::Emitter out;
  configure(out);
  out << YAML::BeginMap;
  out << YAML::Key << "master_seed" << YAML::Value << g.master_seed;
  out << YAML::Key << "individual_count" << YAML::Value << g.individual_count;
  out << YAML::Key << "business_ratio" << YAML::Value << g.business_ratio;
  out << YAML::Key << "institution_count" << YAML::Value << g.institution_count;
  out << YAML::Key << "simulation_start" << YAML::Value << g.simulation_start.str();
  out << YAML::Key << "simulation_end" << YAML::Value << g.simulation_end.str();
  out << YAML::Key << "target_illicit_ratio" << YAML::Value << g.target_illicit_ratio;
  out << YAML::Key << "reporting_threshold" << YAML::Value << g.reporting_threshold.str();
  out << YAML::Key << "per_account_daily_rate_cap" << YAML::Value
      << g.per_account_daily_rate_cap;
  out << YAML::Key << "currency" << YAML::Value << g.currency;
  out << YAML::Key << "home_country" << YAML::Value << g.home_country;
  out << YAML::Key << "accounts_per_individual" << YAML::Value;
  emit_range(out, g.accounts_per_individual);
  out << YAML::Key << "accounts_per_business" << YAML::Value;
  emit_range(out, g.accounts_per_business);

  out << YAML::Key << "background_weights" << YAML::Value << YAML::BeginMap;
  for (const auto& [c, w] : g.background_weights) {
    out << YAML::Key << std::string(to_string(c)) << YAML::Value << w;
  }
  out << YAML::EndMap;

  out << YAML::Key << "amount_params" << YAML::Value << YAML::BeginMap;
  for (const auto& [k, p] : g.amount_params) {
    out << YAML::Key << std::string(to_string(k)) << YAML::Value << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "mu" << YAML::Value << p.mu;
    out << YAML::Key << "sigma" << YAML::Value << p.sigma;
    out << YAML::Key << "min" << YAML::Value << p.min;
    out << YAML::Key << "max" << YAML::Value << p.max;
    out << YAML::EndMap;
  }
  out << YAML::EndMap;

  out << YAML::Key << "output_formats" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "csv" << YAML::Value << g.output_formats.csv;
  out << YAML::Key << "json" << YAML::Value << g.output_formats.json;
  out << YAML::EndMap;

  out << YAML::Key << "countries" << YAML::Value << YAML::BeginSeq;
  for (const auto& c : g.country_table) {
    out << YAML::Flow << YAML::BeginMap << YAML::Key << "code" << YAML::Value << c.code
        << YAML::Key << "high_risk" << YAML::Value << c.high_risk << YAML::Key << "weight"
        << YAML::Value << c.weight << YAML::EndMap;
  }
  out << YAML::EndSeq;

  out << YAML::Key << "occupations" << YAML::Value << YAML::BeginSeq;
  for (const auto& o : g.occupations) {
    out << YAML::Flow << YAML::BeginMap << YAML::Key << "name" << YAML::Value << o.name
        << YAML::Key << "weight" << YAML::Value << o.weight << YAML::Key << "high_risk"
        << YAML::Value << o.high_risk << YAML::Key << "high_paid" << YAML::Value << o.high_paid
        << YAML::EndMap;
  }
  out << YAML::EndSeq;

  out << YAML::Key << "business_categories" << YAML::Value << YAML::BeginSeq;
  for (const auto& b : g.business_categories) {
    out << YAML::Flow << YAML::BeginMap << YAML::Key << "name" << YAML::Value << b.name
        << YAML::Key << "weight" << YAML::Value << b.weight << YAML::Key << "cash_intensive"
        << YAML::Value << b.cash_intensive << YAML::EndMap;
  }
  out << YAML::EndSeq;

  const auto& w = g.risk_weights;
  out << YAML::Key << "risk_weights" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "individual_base" << YAML::Value << w.individual_base;
  out << YAML::Key << "business_base" << YAML::Value << w.business_base;
  out << YAML::Key << "high_risk_age" << YAML::Value << w.high_risk_age;
  out << YAML::Key << "high_risk_occupation" << YAML::Value << w.high_risk_occupation;
  out << YAML::Key << "cash_intensive_category" << YAML::Value << w.cash_intensive_category;
  out << YAML::Key << "very_small_company" << YAML::Value << w.very_small_company;
  out << YAML::Key << "high_risk_jurisdiction" << YAML::Value << w.high_risk_jurisdiction;
  out << YAML::Key << "cap" << YAML::Value << w.cap;
  out << YAML::EndMap;

  const auto& b = g.background;
  out << YAML::Key << "background" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "random_share" << YAML::Value << b.random_share;
  out << YAML::Key << "salary_share" << YAML::Value << b.salary_share;
  out << YAML::Key << "high_value_share" << YAML::Value << b.high_value_share;
  out << YAML::Key << "counter_leakage_share" << YAML::Value << b.counter_leakage_share;
  out << YAML::Key << "fraud_account_share" << YAML::Value << b.fraud_account_share;
  if (b.transaction_budget) {
    out << YAML::Key << "transaction_budget" << YAML::Value << *b.transaction_budget;
  }
  out << YAML::Key << "structuring_share" << YAML::Value << b.structuring_share;
  out << YAML::Key << "structuring_range" << YAML::Value;
  emit_range(out, b.structuring_range);
  out << YAML::Key << "legit_structuring_range" << YAML::Value;
  emit_range(out, b.legit_structuring_range);
  out << YAML::Key << "salary_schedule" << YAML::Value
      << std::string(to_string(b.salary_schedule));
  out << YAML::Key << "pay_days" << YAML::Value << YAML::Flow << b.pay_days;
  out << YAML::Key << "salary_period" << YAML::Value << format_duration(b.salary_period);
  out << YAML::Key << "salary_recipients" << YAML::Value;
  emit_range(out, b.salary_recipients);
  out << YAML::Key << "salary_jitter" << YAML::Value << b.salary_jitter;
  out << YAML::Key << "high_value_min_employees" << YAML::Value << b.high_value_min_employees;
  out << YAML::Key << "fraud_mixing" << YAML::Value;
  emit_range(out, b.fraud_mixing);
  out << YAML::Key << "burst_size" << YAML::Value;
  emit_range(out, b.burst_size);
  out << YAML::Key << "burst_window" << YAML::Value << format_duration(b.burst_window);
  out << YAML::Key << "chain_hops" << YAML::Value;
  emit_range(out, b.chain_hops);
  out << YAML::Key << "rapid_deposits" << YAML::Value;
  emit_range(out, b.rapid_deposits);
  out << YAML::Key << "rapid_deposit_window" << YAML::Value
      << format_duration(b.rapid_deposit_window);
  out << YAML::EndMap;

  out << YAML::EndMap;
  return shorten_reals(out.c_str()) + "\n";
}

std::string to_yaml(const PatternConfig& p) {
  YAML::Emitter out;
  configure(out);
  out << YAML::BeginMap;
  out << YAML::Key << "strict" << YAML::Value << p.strict;
  out << YAML::Key << "exclusive_per_typology" << YAML::Value << p.exclusive_per_typology;
  out << YAML::Key << "sub_threshold" << YAML::Value;
  emit_range(out, p.sub_threshold);

  const auto& o = p.overseas_transfers;
  out << YAML::Key << "overseas_transfers" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "instance_count" << YAML::Value << o.instance_count;
  out << YAML::Key << "layering" << YAML::Value;
  emit_layering(out, o.layering);
  out << YAML::Key << "transfers" << YAML::Value;
  emit_range(out, o.transfers);
  out << YAML::Key << "amount" << YAML::Value;
  emit_range(out, o.amount);
  out << YAML::Key << "destinations" << YAML::Value;
  emit_range(out, o.destinations);
  out << YAML::Key << "timing" << YAML::Value << std::string(to_string(o.timing));
  out << YAML::Key << "periods" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (Seconds s : o.periods) out << format_duration(s);
  out << YAML::EndSeq;
  out << YAML::Key << "epsilon" << YAML::Value << format_duration(o.epsilon);
  out << YAML::Key << "burst_window" << YAML::Value << format_duration(o.burst_window);
  out << YAML::Key << "deposit_lead" << YAML::Value;
  emit_range(out, o.deposit_lead);
  out << YAML::EndMap;

  const auto& r = p.rapid_movement;
  out << YAML::Key << "rapid_movement" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "instance_count" << YAML::Value << r.instance_count;
  out << YAML::Key << "layering" << YAML::Value;
  emit_layering(out, r.layering);
  out << YAML::Key << "sources" << YAML::Value;
  emit_range(out, r.sources);
  out << YAML::Key << "inflow_window" << YAML::Value << format_duration(r.inflow_window);
  out << YAML::Key << "withdrawal_delay" << YAML::Value;
  emit_range(out, r.withdrawal_delay);
  out << YAML::Key << "withdrawals" << YAML::Value;
  emit_range(out, r.withdrawals);
  out << YAML::Key << "withdrawal_window" << YAML::Value << format_duration(r.withdrawal_window);
  out << YAML::Key << "outflow_ratio" << YAML::Value;
  emit_range(out, r.outflow_ratio);
  out << YAML::Key << "max_duration" << YAML::Value << format_duration(r.max_duration);
  out << YAML::EndMap;

  const auto& f = p.front_business;
  out << YAML::Key << "front_business" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "instance_count" << YAML::Value << f.instance_count;
  out << YAML::Key << "layering" << YAML::Value;
  emit_layering(out, f.layering);
  out << YAML::Key << "deposits" << YAML::Value;
  emit_range(out, f.deposits);
  out << YAML::Key << "deposit_amount" << YAML::Value;
  emit_range(out, f.deposit_amount);
  out << YAML::Key << "deposit_window" << YAML::Value << format_duration(f.deposit_window);
  out << YAML::Key << "transfer_delay" << YAML::Value;
  emit_range(out, f.transfer_delay);
  out << YAML::Key << "transfer_ratio" << YAML::Value;
  emit_range(out, f.transfer_ratio);
  out << YAML::Key << "destinations" << YAML::Value;
  emit_range(out, f.destinations);
  out << YAML::EndMap;

  const auto& y = p.synchronised;
  out << YAML::Key << "synchronised" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "instance_count" << YAML::Value << y.instance_count;
  out << YAML::Key << "coordinators" << YAML::Value;
  emit_range(out, y.coordinators);
  out << YAML::Key << "sync_window" << YAML::Value << format_duration(y.sync_window);
  out << YAML::Key << "deposits_per_coordinator" << YAML::Value;
  emit_range(out, y.deposits_per_coordinator);
  out << YAML::Key << "transfer_delay" << YAML::Value;
  emit_range(out, y.transfer_delay);
  out << YAML::Key << "transfer_ratio" << YAML::Value;
  emit_range(out, y.transfer_ratio);
  out << YAML::EndMap;

  const auto& u = p.u_turn;
  out << YAML::Key << "u_turn" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "instance_count" << YAML::Value << u.instance_count;
  out << YAML::Key << "chain_entities" << YAML::Value;
  emit_range(out, u.chain_entities);
  out << YAML::Key << "initial_amount" << YAML::Value;
  emit_range(out, u.initial_amount);
  out << YAML::Key << "hop_delay" << YAML::Value;
  emit_range(out, u.hop_delay);
  out << YAML::Key << "fee" << YAML::Value;
  emit_range(out, u.fee);
  out << YAML::Key << "return_ratio" << YAML::Value;
  emit_range(out, u.return_ratio);
  out << YAML::EndMap;

  out << YAML::EndMap;
  return shorten_reals(out.c_str()) + "\n";
}

}  // namespace amlgen
