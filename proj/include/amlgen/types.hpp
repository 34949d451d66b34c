#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace amlgen {

/// Transaction category carried on every transaction edge.
enum class Category { payment, transfer, deposit, withdrawal, salary };

inline constexpr std::array kAllCategories{Category::payment, Category::transfer, Category::deposit,
                                           Category::withdrawal, Category::salary};

/// Key into the amount model. Salary and high-value draws have their own
/// distributions even though they are emitted as salary/transfer edges.
enum class AmountKind { payment, transfer, withdrawal, deposit, salary, high_value };

inline constexpr std::array kAllAmountKinds{AmountKind::payment,  AmountKind::transfer,
                                            AmountKind::withdrawal, AmountKind::deposit,
                                            AmountKind::salary,   AmountKind::high_value};

std::string_view to_string(Category c);
std::string_view to_string(AmountKind k);
std::optional<Category> parse_category(std::string_view s);
std::optional<AmountKind> parse_amount_kind(std::string_view s);

/// Amount distribution used for background edges of a category.
AmountKind amount_kind_for(Category c);

}  // namespace amlgen
