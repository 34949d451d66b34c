#include "amlgen/money.hpp"

#include <cmath>
#include <cstdlib>

#include "amlgen/error.hpp"

namespace amlgen {

Money Money::from_units(double units) { return Money(std::llround(units * 100.0)); }

Money Money::scaled(double factor) const {
  return Money(std::llround(static_cast<double>(cents_) * factor));
}

std::string Money::str() const {
  const std::int64_t abs = cents_ < 0 ? -cents_ : cents_;
  std::string out = cents_ < 0 ? "-" : "";
  out += std::to_string(abs / 100);
  out += '.';
  const auto frac = abs % 100;
  if (frac < 10) out += '0';
  out += std::to_string(frac);
  return out;
}

Money parse_money(const std::string& text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::int64_t whole = 0;
  std::size_t digits = 0;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
    whole = whole * 10 + (text[pos] - '0');
    ++pos;
    ++digits;
  }
  std::int64_t frac = 0;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    int scale = 10;
    std::size_t frac_digits = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      if (frac_digits >= 2) throw ParseError("amount '" + text + "' has more than 2 decimals");
      frac += (text[pos] - '0') * scale;
      scale /= 10;
      ++pos;
      ++frac_digits;
    }
  }
  if (digits == 0 || pos != text.size()) throw ParseError("invalid amount '" + text + "'");
  const std::int64_t cents = whole * 100 + frac;
  return Money::from_cents(negative ? -cents : cents);
}

}  // namespace amlgen
