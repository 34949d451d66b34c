#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <utility>

namespace amlgen {

/// Seeded xoshiro256** stream with named substreams.
///
/// All distributions are implemented here rather than through <random>
/// distribution objects, whose algorithms differ between standard library
/// implementations. Given the same seed, every method produces the same
/// sequence on every platform with IEEE-754 doubles.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Independent stream keyed by (root seed, label, index). Depends only on
  /// the seed this stream was constructed with, never on how many values
  /// have been drawn from it.
  [[nodiscard]] Rng derive(std::string_view label, std::uint64_t index = 0) const;

  [[nodiscard]] std::uint64_t seed() const { return seed_; }

  /// Uniform in [0, 1).
  double uniform();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer in [lo, hi], both inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  /// Uniform index in [0, n).
  std::size_t index(std::size_t n);
  double normal();
  double lognormal(double mu, double sigma);
  bool bernoulli(double p);
  /// Index drawn proportionally to non-negative weights.
  std::size_t weighted_index(std::span<const double> weights);

  template <class T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[index(i)]);
    }
  }

 private:
  std::uint64_t seed_;
  std::uint64_t state_[4];
};

/// splitmix64 finaliser; exposed for hashing seeds and labels together.
std::uint64_t mix64(std::uint64_t x);

}  // namespace amlgen
