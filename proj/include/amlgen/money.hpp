#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace amlgen {

/// Currency amount held in integer minor units (cents).
class Money {
 public:
  constexpr Money() = default;

  static constexpr Money from_cents(std::int64_t cents) { return Money(cents); }
  /// Rounds half away from zero to the nearest cent.
  static Money from_units(double units);

  [[nodiscard]] constexpr std::int64_t cents() const { return cents_; }
  [[nodiscard]] constexpr double units() const { return static_cast<double>(cents_) / 100.0; }

  /// Multiplies by a real factor and rounds to the nearest cent.
  [[nodiscard]] Money scaled(double factor) const;

  /// Two fraction digits, no grouping, '.' separator: "9801.00".
  [[nodiscard]] std::string str() const;

  constexpr Money& operator+=(Money o) {
    cents_ += o.cents_;
    return *this;
  }
  constexpr Money& operator-=(Money o) {
    cents_ -= o.cents_;
    return *this;
  }
  friend constexpr Money operator+(Money a, Money b) { return Money(a.cents_ + b.cents_); }
  friend constexpr Money operator-(Money a, Money b) { return Money(a.cents_ - b.cents_); }
  friend constexpr auto operator<=>(Money, Money) = default;

 private:
  constexpr explicit Money(std::int64_t cents) : cents_(cents) {}
  std::int64_t cents_ = 0;
};

/// Parses "1234", "1234.5", "1234.56". Throws ParseError.
Money parse_money(const std::string& text);

}  // namespace amlgen
