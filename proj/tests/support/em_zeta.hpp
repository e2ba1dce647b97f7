#pragma once

// Reference Z(t) for tests: an Euler-Maclaurin zeta(1/2+it) evaluator kept
// deliberately separate from the library implementation. It derives its own
// Bernoulli numbers at runtime and uses a different (heavier) truncation
// policy, so agreement with the library is a genuine cross-check of the
// Riemann-Siegel path. The phase factor reuses the library theta, which is
// pinned against frozen high-precision values elsewhere.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "ladderlab/zeta.hpp"

namespace testsupport {

using cld = std::complex<long double>;

// B_0..B_{n} via the defining recurrence sum_{k<=n} C(n+1,k) B_k = 0.
inline const std::vector<long double>& bernoulli_numbers() {
  static const std::vector<long double> b = [] {
    const int n_max = 26;
    std::vector<long double> out(n_max + 1, 0.0L);
    std::vector<std::vector<long double>> choose(n_max + 2);
    for (int n = 0; n <= n_max + 1; ++n) {
      choose[n].assign(n + 1, 1.0L);
      for (int k = 1; k < n; ++k) {
        choose[n][k] = choose[n - 1][k - 1] + choose[n - 1][k];
      }
    }
    out[0] = 1.0L;
    for (int n = 1; n <= n_max; ++n) {
      long double acc = 0.0L;
      for (int k = 0; k < n; ++k) acc += choose[n + 1][k] * out[k];
      out[n] = -acc / choose[n + 1][n];
    }
    return out;
  }();
  return b;
}

inline cld em_zeta_half(long double t) {
  const auto& bern = bernoulli_numbers();
  const auto n_big = static_cast<std::size_t>(
      std::max(48.0L, std::ceil(0.6L * t) + 16.0L));
  const cld s(0.5L, t);
  long double re = 0.0L, im = 0.0L;
  for (std::size_t n = 1; n < n_big; ++n) {
    const long double nl = static_cast<long double>(n);
    const long double amp = 1.0L / std::sqrt(nl);
    const long double ph = t * std::log(nl);
    re += amp * std::cos(ph);
    im -= amp * std::sin(ph);
  }
  cld total(re, im);
  const long double nl = static_cast<long double>(n_big);
  const cld n_pow_ms = std::exp(-s * std::log(nl));
  total += 0.5L * n_pow_ms;
  total += n_pow_ms * nl / (s - 1.0L);
  cld poch = s;
  cld n_pow = n_pow_ms / nl;
  long double fact = 2.0L;  // (2k)! running value
  for (int k = 1; k <= 12; ++k) {
    total += (bern[2 * k] / fact) * poch * n_pow;
    poch *= (s + static_cast<long double>(2 * k - 1)) *
            (s + static_cast<long double>(2 * k));
    n_pow /= nl * nl;
    fact *= static_cast<long double>(2 * k + 1) * static_cast<long double>(2 * k + 2);
  }
  return total;
}

inline long double oracle_theta(long double t) {
  if (t >= 30.0L) return ladderlab::detail::theta_asymptotic(t);
  if (t <= 0.0L) return 0.0L;  // theta(0) = Im ln Gamma(1/4) = 0
  return ladderlab::theta(static_cast<double>(t)).theta;
}

// Z(t) = e^{i theta} zeta(1/2+it), real up to rounding.
inline double oracle_z(double t) {
  const long double tl = t;
  const cld zv = em_zeta_half(tl);
  const long double th = oracle_theta(tl);
  return static_cast<double>(std::cos(th) * zv.real() - std::sin(th) * zv.imag());
}

inline double oracle_zsq(double t) {
  const double z = oracle_z(t);
  return z * z;
}

}  // namespace testsupport
