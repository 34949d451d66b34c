#include "amlgen/types.hpp"

namespace amlgen {

std::string_view to_string(Category c) {
  switch (c) {
    case Category::payment: return "payment";
    case Category::transfer: return "transfer";
    case Category::deposit: return "deposit";
    case Category::withdrawal: return "withdrawal";
    case Category::salary: return "salary";
  }
  return "?";
}

std::string_view to_string(AmountKind k) {
  switch (k) {
    case AmountKind::payment: return "payment";
    case AmountKind::transfer: return "transfer";
    case AmountKind::withdrawal: return "withdrawal";
    case AmountKind::deposit: return "deposit";
    case AmountKind::salary: return "salary";
    case AmountKind::high_value: return "high_value";
  }
  return "?";
}

std::optional<Category> parse_category(std::string_view s) {
  for (Category c : kAllCategories) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

std::optional<AmountKind> parse_amount_kind(std::string_view s) {
  for (AmountKind k : kAllAmountKinds) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

AmountKind amount_kind_for(Category c) {
  switch (c) {
    case Category::payment: return AmountKind::payment;
    case Category::transfer: return AmountKind::transfer;
    case Category::deposit: return AmountKind::deposit;
    case Category::withdrawal: return AmountKind::withdrawal;
    case Category::salary: return AmountKind::salary;
  }
  return AmountKind::payment;
}

}  // namespace amlgen
