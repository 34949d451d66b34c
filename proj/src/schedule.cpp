#include "amlgen/schedule.hpp"

#include <algorithm>

#include "amlgen/error.hpp"

namespace amlgen {

std::vector<Timestamp> schedule_burst(std::size_t n, Seconds window, Timestamp t0, Rng& rng) {
  if (n == 0) throw InvalidWindow("burst needs at least one event");
  if (window <= 0) throw InvalidWindow("burst window must be positive");
  std::vector<Timestamp> out;
  out.reserve(n);
  out.push_back(t0);
  for (std::size_t i = 1; i < n; ++i) out.push_back(t0 + rng.uniform_int(0, window));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Timestamp> schedule_periodic(std::size_t n, Seconds period, Seconds epsilon,
                                         Timestamp t0, Rng& rng) {
  if (n == 0) throw InvalidPeriod("periodic schedule needs at least one event");
  if (epsilon < 0 || period <= epsilon) {
    throw InvalidPeriod("period must exceed epsilon and epsilon must be non-negative");
  }
  std::vector<Timestamp> out;
  out.reserve(n);
  out.push_back(t0);
  for (std::size_t i = 1; i < n; ++i) {
    const Seconds jitter = epsilon > 0 ? rng.uniform_int(-epsilon, epsilon) : 0;
    out.push_back(out.back() + period + jitter);
  }
  return out;
}

}  // namespace amlgen
