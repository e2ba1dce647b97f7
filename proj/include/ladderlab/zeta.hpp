#pragma once

namespace ladderlab {

// Riemann-Siegel phase at height t, with its derivative.
struct PhaseValue {
  double t;
  double theta;        // radians
  double theta_deriv;  // radians per unit t; positive for t > 2*pi
};

// Hardy function sample: z is real, zsq = z*z is the energy density.
struct ZValue {
  double t;
  double z;
  double zsq;
};

inline constexpr double kDefaultTMin = 10.0;
// Riemann-Siegel correction terms C0..C4; 4 holds 1e-6 absolute error down
// to the Euler-Maclaurin handover, lower orders are prefixes of the series.
inline constexpr int kDefaultRsOrder = 4;
inline constexpr int kMaxRsOrder = 4;
// Below this height the main sum is too short; Euler-Maclaurin takes over.
inline constexpr double kEmSwitch = 50.0;

// Phase theta(t) = -t/2 ln pi + Im ln Gamma(1/4 + it/2): asymptotic
// expansion for t >= 30, direct log-Gamma below. Throws std::domain_error
// for t <= 0.
PhaseValue theta(double t);

// Z(t) = e^{i theta(t)} zeta(1/2 + it). Throws std::domain_error below
// t_min. order selects the Riemann-Siegel correction depth (0..4).
ZValue hardy_z(double t, double t_min = kDefaultTMin, int order = kDefaultRsOrder);

// Expected zero density of Z (zeros per unit t), ln(t/2pi)/(2pi) with a
// floor for small t; the frequency hint for Z^2 quadrature.
double z_zero_density(double t);

namespace detail {

// Unguarded Z(t), valid for all t >= 0; the I(T) integrand starts at 0.
double z_unchecked(double t, int order = kDefaultRsOrder);

// Long-double phase, asymptotic branch (t >= 30); exposed for the test
// oracle so its phase factor carries full precision.
long double theta_asymptotic(long double t);

}  // namespace detail

}  // namespace ladderlab
