#include "ladderlab/zeta.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "ladderlab/errors.hpp"
#include "rs_tables.inc"

namespace ladderlab {
namespace {

constexpr long double kPi = 3.141592653589793238463L;
constexpr long double kTwoPi = 2.0L * kPi;
constexpr long double kLog2Pi = 1.837877066409345483561L;
constexpr long double kHalfLogPi = 0.5723649429247000870717L;
constexpr long double kPiOver8 = 0.3926990816987241548078L;

// B_{2k}/(2k(2k-1)) for the Stirling series of ln Gamma.
constexpr long double kLGammaC[10] = {
    0.08333333333333333333333L,  -0.002777777777777777777778L,
    0.0007936507936507936507937L, -0.0005952380952380952380952L,
    0.0008417508417508417508418L, -0.001917526917526917526918L,
    0.00641025641025641025641L,   -0.02955065359477124183007L,
    0.1796443723688305731649L,    -1.392432216905901116427L,
};

// B_{2k}/(2k) for the Stirling series of digamma.
constexpr long double kDigammaC[8] = {
    0.08333333333333333333333L, -0.008333333333333333333333L,
    0.003968253968253968253968L, -0.004166666666666666666667L,
    0.007575757575757575757576L, -0.02109279609279609279609L,
    0.08333333333333333333333L, -0.443259803921568627451L,
};

// B_{2k}/(2k)! for the Euler-Maclaurin tail.
constexpr long double kEmC[14] = {
    0.08333333333333333333333L,   -0.001388888888888888888889L,
    0.00003306878306878306878307L, -8.267195767195767195767e-7L,
    2.087675698786809897921e-8L,  -5.284190138687493184848e-10L,
    1.338253653068467883283e-11L, -3.38968029632258286683e-13L,
    8.586062056277844564136e-15L, -2.174868698558061873042e-16L,
    5.509002828360229515203e-18L, -1.395446468581252334071e-19L,
    3.534707039629467471693e-21L, -8.953517427037546850403e-23L,
};

using cld = std::complex<long double>;

// ln Gamma(z) by argument promotion until |z| >= 12, then Stirling.
cld log_gamma(cld z) {
  cld shift(0.0L, 0.0L);
  while (std::abs(z) < 12.0L) {
    shift -= std::log(z);
    z += 1.0L;
  }
  cld r = (z - 0.5L) * std::log(z) - z + 0.5L * (kLog2Pi);
  const cld z2 = z * z;
  cld zp = z;
  for (const long double c : kLGammaC) {
    r += c / zp;
    zp *= z2;
  }
  return r + shift;
}

cld digamma(cld z) {
  cld shift(0.0L, 0.0L);
  while (std::abs(z) < 12.0L) {
    shift -= 1.0L / z;
    z += 1.0L;
  }
  cld r = std::log(z) - 0.5L / z;
  const cld z2 = z * z;
  cld zp = z2;
  for (const long double c : kDigammaC) {
    r -= c / zp;
    zp *= z2;
  }
  return r + shift;
}

long double theta_deriv_ld(long double t) {
  if (t >= 30.0L) {
    const long double t2 = t * t;
    long double corr = 0.0L;
    // derivative of the theta asymptotic tail
    corr -= 1.0L / (48.0L * t2);
    corr -= 21.0L / (5760.0L * t2 * t2);
    corr -= 155.0L / (80640.0L * t2 * t2 * t2);
    return 0.5L * std::log(t / kTwoPi) + corr;
  }
  const cld psi = digamma(cld(0.25L, 0.5L * t));
  return -kHalfLogPi + 0.5L * psi.real();
}

long double theta_ld(long double t) {
  if (t >= 30.0L) return detail::theta_asymptotic(t);
  const cld lg = log_gamma(cld(0.25L, 0.5L * t));
  return -0.5L * t * (2.0L * kHalfLogPi) + lg.imag();
}

// Clenshaw on [0,1] (argument u = 2p-1, a0 halved convention).
double cheb_eval(const double* a, int n, double p) {
  const double u = 2.0 * p - 1.0;
  double b1 = 0.0, b2 = 0.0;
  for (int j = n - 1; j >= 1; --j) {
    const double next = 2.0 * u * b1 - b2 + a[j];
    b2 = b1;
    b1 = next;
  }
  return u * b1 - b2 + 0.5 * a[0];
}

double rs_correction(double p, int order, double inv_a) {
  static const double* tables[5] = {kC0, kC1, kC2, kC3, kC4};
  static const int sizes[5] = {
      static_cast<int>(sizeof(kC0) / sizeof(double)),
      static_cast<int>(sizeof(kC1) / sizeof(double)),
      static_cast<int>(sizeof(kC2) / sizeof(double)),
      static_cast<int>(sizeof(kC3) / sizeof(double)),
      static_cast<int>(sizeof(kC4) / sizeof(double))};
  double corr = 0.0;
  double scale = 1.0;
  for (int j = 0; j <= order; ++j) {
    corr += cheb_eval(tables[j], sizes[j], p) * scale;
    scale *= inv_a;
  }
  return corr;
}

// Per-thread ln(n) table; the main-sum phase needs extended precision.
const long double* log_table(std::size_t n_max) {
  thread_local std::vector<long double> logs{0.0L, 0.0L};  // [0] unused
  while (logs.size() <= n_max) {
    logs.push_back(std::log(static_cast<long double>(logs.size())));
  }
  return logs.data();
}

const double* inv_sqrt_table(std::size_t n_max) {
  thread_local std::vector<double> r{0.0, 1.0};  // [0] unused
  while (r.size() <= n_max) {
    r.push_back(1.0 / std::sqrt(static_cast<double>(r.size())));
  }
  return r.data();
}

double z_riemann_siegel(double t, int order) {
  const long double tl = t;
  const long double a = std::sqrt(tl / kTwoPi);
  const auto n_terms = static_cast<std::size_t>(a);  // floor; a >= 1 here
  const long double p = a - static_cast<long double>(n_terms);
  const long double th = detail::theta_asymptotic(tl);
  const long double* logs = log_table(n_terms);
  const double* inv_sqrt = inv_sqrt_table(n_terms);
  // The raw phase grows to ~t ln t; reduce it mod 2pi in extended precision
  // (keeps ~1e-12 rad through t = 1e7) and take the fast double cosine.
  constexpr double inv_two_pi = 0.15915494309189533577;
  double sum = 0.0;
  for (std::size_t n = 1; n <= n_terms; ++n) {
    const long double raw = th - tl * logs[n];
    const double k = __builtin_nearbyint(static_cast<double>(raw) * inv_two_pi);
    const double ph = static_cast<double>(raw - static_cast<long double>(k) * kTwoPi);
    sum += std::cos(ph) * inv_sqrt[n];
  }
  sum *= 2.0;
  const double corr =
      rs_correction(static_cast<double>(p), order, static_cast<double>(1.0L / a));
  const double sign = (n_terms % 2 == 1) ? 1.0 : -1.0;  // (-1)^{N-1}
  return sum + sign * static_cast<double>(1.0L / std::sqrt(a)) * corr;
}

// zeta(1/2 + it) by Euler-Maclaurin: main sum to N-1, midpoint and tail
// corrections with 14 Bernoulli terms. N grows ~0.4 t; only used below the
// Riemann-Siegel handover plus a margin, so N stays small.
cld zeta_em(long double t) {
  const auto n_big = static_cast<std::size_t>(
      std::max(32.0L, std::ceil(0.4L * t) + 10.0L));
  const cld s(0.5L, t);
  const long double* logs = log_table(n_big);
  long double re = 0.0L, im = 0.0L;
  for (std::size_t n = 1; n < n_big; ++n) {
    const long double amp = 1.0L / std::sqrt(static_cast<long double>(n));
    const long double ph = t * logs[n];
    re += amp * std::cos(ph);
    im -= amp * std::sin(ph);
  }
  cld total(re, im);
  const long double nl = static_cast<long double>(n_big);
  const cld n_pow_ms = std::exp(-s * std::log(nl));  // N^{-s}
  total += 0.5L * n_pow_ms;
  total += n_pow_ms * nl / (s - 1.0L);               // N^{1-s}/(s-1)
  cld poch = s;                                      // (s)_1
  cld n_pow = n_pow_ms / nl;                         // N^{-s-1}
  const long double inv_n2 = 1.0L / (nl * nl);
  for (int k = 1; k <= 14; ++k) {
    total += kEmC[k - 1] * poch * n_pow;
    poch *= (s + static_cast<long double>(2 * k - 1)) *
            (s + static_cast<long double>(2 * k));
    n_pow *= inv_n2;
  }
  return total;
}

double z_euler_maclaurin(double t) {
  const long double tl = t;
  const cld zeta_val = zeta_em(tl);
  const long double th = theta_ld(tl);
  const cld phase(std::cos(th), std::sin(th));
  return static_cast<double>((phase * zeta_val).real());
}

}  // namespace

PhaseValue theta(double t) {
  if (!(t > 0.0)) throw std::domain_error("theta: t must be positive");
  return PhaseValue{t, static_cast<double>(theta_ld(t)),
                    static_cast<double>(theta_deriv_ld(t))};
}

ZValue hardy_z(double t, double t_min, int order) {
  if (!(t >= t_min)) throw std::domain_error("hardy_z: t below configured t_min");
  if (order < 0 || order > kMaxRsOrder) {
    throw std::domain_error("hardy_z: correction order out of range");
  }
  const double z = detail::z_unchecked(t, order);
  return ZValue{t, z, z * z};
}

double z_zero_density(double t) {
  const double floor_density = 0.2;
  if (t < 2.0 * 3.141592653589793) return floor_density;
  const double d = std::log(t / (2.0 * 3.141592653589793)) / (2.0 * 3.141592653589793);
  return std::max(d, floor_density);
}

namespace detail {

long double theta_asymptotic(long double t) {
  const long double inv_t = 1.0L / t;
  const long double inv_t2 = inv_t * inv_t;
  long double corr = 1.0L / 48.0L;
  corr += (7.0L / 5760.0L) * inv_t2;
  corr += (31.0L / 80640.0L) * inv_t2 * inv_t2;
  corr += (127.0L / 430080.0L) * inv_t2 * inv_t2 * inv_t2;
  corr += (511.0L / 1216512.0L) * inv_t2 * inv_t2 * inv_t2 * inv_t2;
  return 0.5L * t * std::log(t / kTwoPi) - 0.5L * t - kPiOver8 + corr * inv_t;
}

double z_unchecked(double t, int order) {
  if (t < kEmSwitch) return z_euler_maclaurin(t);
  return z_riemann_siegel(t, order);
}

}  // namespace detail

}  // namespace ladderlab
