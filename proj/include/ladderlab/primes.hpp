#pragma once

#include <cstdint>

namespace ladderlab {

struct PrimeCount {
  double T;
  std::uint64_t count;  // pi(floor(T))
};

inline constexpr double kPrimeCap = 1e8;  // desk-scale sieve bound

// Exact pi(floor(T)) by a segmented sieve (1e6-wide segments, parallel
// across segments with a fixed-order merge). Throws std::domain_error for
// T < 0 and resource_error above kPrimeCap.
PrimeCount prime_count(double T);

// Serial reference implementation (same contract, no threading).
PrimeCount prime_count_serial(double T);

}  // namespace ladderlab
