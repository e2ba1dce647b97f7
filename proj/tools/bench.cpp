// Serial vs OpenMP comparison for the two parallel kernels: checkpoint
// increment batches and the segmented sieve. Results must match exactly;
// timings show whatever the host's thread count buys.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ladderlab/primes.hpp"
#include "ladderlab/quadrature.hpp"

namespace {

template <typename F>
double time_seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP disabled (serial build)\n");
#endif

  using namespace ladderlab;

  CheckpointTable serial_table;
  CheckpointTable parallel_table;
  const double t_ckpt_serial = time_seconds(
      [&] { serial_table = build_checkpoints(2e4, 10.0, nullptr, false); });
  const double t_ckpt_parallel = time_seconds(
      [&] { parallel_table = build_checkpoints(2e4, 10.0, nullptr, true); });
  bool same = serial_table.grid == parallel_table.grid;
  std::printf("checkpoint build to 2e4: serial %.3f s, parallel %.3f s, "
              "speedup %.2fx, tables %s\n",
              t_ckpt_serial, t_ckpt_parallel,
              t_ckpt_serial / t_ckpt_parallel,
              same ? "identical" : "DIFFER");
  if (!same) return 1;

  PrimeCount serial_pc{};
  PrimeCount parallel_pc{};
  const double t_pi_serial =
      time_seconds([&] { serial_pc = prime_count_serial(5e7); });
  const double t_pi_parallel =
      time_seconds([&] { parallel_pc = prime_count(5e7); });
  same = serial_pc.count == parallel_pc.count;
  std::printf("pi(5e7): serial %.3f s, parallel %.3f s, speedup %.2fx, "
              "counts %s (%llu)\n",
              t_pi_serial, t_pi_parallel, t_pi_serial / t_pi_parallel,
              same ? "identical" : "DIFFER",
              static_cast<unsigned long long>(parallel_pc.count));
  return same ? 0 : 1;
}
