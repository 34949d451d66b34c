#pragma once

#include <vector>

#include "amlgen/rng.hpp"
#include "amlgen/time.hpp"

namespace amlgen {

/// n sorted timestamps starting at t0 with max - min <= window. The first is
/// t0; the rest are jittered uniformly over the window. Throws InvalidWindow.
std::vector<Timestamp> schedule_burst(std::size_t n, Seconds window, Timestamp t0, Rng& rng);

/// n timestamps from t0 whose consecutive gaps lie in period +/- epsilon.
/// Throws InvalidPeriod.
std::vector<Timestamp> schedule_periodic(std::size_t n, Seconds period, Seconds epsilon,
                                         Timestamp t0, Rng& rng);

/// Largest span schedule_periodic can produce for n events.
inline Seconds periodic_span(std::size_t n, Seconds period, Seconds epsilon) {
  return n == 0 ? 0 : static_cast<Seconds>(n - 1) * (period + epsilon);
}

}  // namespace amlgen
