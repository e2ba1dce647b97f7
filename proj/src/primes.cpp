#include "ladderlab/primes.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ladderlab/errors.hpp"

namespace ladderlab {
namespace {

constexpr std::uint64_t kSegmentWidth = 1'000'000;

// Odd-only sieve of the base range [2, limit].
std::vector<std::uint32_t> base_primes(std::uint64_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  primes.push_back(2);
  const std::uint64_t half = (limit - 1) / 2;  // index i <-> odd 2i+1, i >= 1
  std::vector<std::uint8_t> composite(half + 1, 0);
  for (std::uint64_t i = 1; i <= half; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    primes.push_back(static_cast<std::uint32_t>(p));
    for (std::uint64_t j = (p * p - 1) / 2; j <= half; j += p) {
      composite[j] = 1;
    }
  }
  return primes;
}

std::uint64_t sieve_segment_count(std::uint64_t lo, std::uint64_t hi,
                                  const std::vector<std::uint32_t>& primes,
                                  std::vector<std::uint8_t>& scratch) {
  // counts primes in [lo, hi); lo >= 2
  const std::uint64_t width = hi - lo;
  scratch.assign(width, 1);
  for (const std::uint32_t p : primes) {
    const std::uint64_t pp = static_cast<std::uint64_t>(p) * p;
    if (pp >= hi) break;
    std::uint64_t start = pp;
    if (start < lo) start = ((lo + p - 1) / p) * p;
    for (std::uint64_t m = start; m < hi; m += p) {
      scratch[m - lo] = 0;
    }
  }
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < width; ++i) count += scratch[i];
  return count;
}

PrimeCount prime_count_impl(double T, bool parallel) {
  if (T < 0.0 || !std::isfinite(T)) {
    throw std::domain_error("prime_count: T must be nonnegative");
  }
  if (T > kPrimeCap) {
    throw resource_error("prime_count: T exceeds the sieve cap of 1e8");
  }
  const auto n = static_cast<std::uint64_t>(std::floor(T));
  if (n < 2) return PrimeCount{T, 0};

  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  const auto primes = base_primes(root + 1);

  const std::uint64_t first = 2;
  const std::uint64_t segments = (n + 1 - first + kSegmentWidth - 1) / kSegmentWidth;
  std::vector<std::uint64_t> counts(segments, 0);
#pragma omp parallel if (parallel)
  {
    std::vector<std::uint8_t> scratch;
#pragma omp for schedule(dynamic)
    for (long long s = 0; s < static_cast<long long>(segments); ++s) {
      const std::uint64_t lo = first + static_cast<std::uint64_t>(s) * kSegmentWidth;
      const std::uint64_t hi = std::min(lo + kSegmentWidth, n + 1);
      counts[static_cast<std::uint64_t>(s)] =
          sieve_segment_count(lo, hi, primes, scratch);
    }
  }
  std::uint64_t total = 0;
  for (const std::uint64_t c : counts) total += c;  // fixed-order merge
  return PrimeCount{T, total};
}

}  // namespace

PrimeCount prime_count(double T) { return prime_count_impl(T, true); }

PrimeCount prime_count_serial(double T) { return prime_count_impl(T, false); }

}  // namespace ladderlab
