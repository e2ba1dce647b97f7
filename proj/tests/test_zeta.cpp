#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ladderlab/errors.hpp"
#include "ladderlab/zeta.hpp"
#include "support/em_zeta.hpp"

using ladderlab::hardy_z;
using ladderlab::theta;

// Frozen 20+ digit references (mpmath, dps >= 30).
namespace ref {
constexpr double kThetaZero = 17.845599540410860817;
constexpr double kTheta50 = 26.46136607016140964745495;
constexpr double kTheta10 = -3.067074396289895291702;
constexpr double kTheta1e4 = 31861.92383083582087295;
constexpr double kThetaDeriv100 = 1.383644476419579353241;
constexpr double kFirstZero = 14.13472514173469379;
constexpr double kZ10 = -1.549194546181022389085;
constexpr double kZ30 = 0.5960285192398849553185;
constexpr double kZ49_9 = -0.1857177093605434635967;
constexpr double kZ50_1 = -0.5004292303842658980748;
constexpr double kZ50 = -0.3407350059550249827533;
constexpr double kZ100 = 2.69269705666446347499538;
constexpr double kZ1000 = 0.9977946375215866139860;
constexpr double kZ10000 = -0.3413947242312085591769;
constexpr double kZetaHalf = -1.460354508809586812889;
}  // namespace ref

TEST_CASE("theta matches frozen high-precision values") {
  CHECK(std::abs(theta(50.0).theta - ref::kTheta50) <= 1e-9);
  CHECK(std::abs(theta(10.0).theta - ref::kTheta10) <= 1e-10);
  CHECK(std::abs(theta(1e4).theta - ref::kTheta1e4) <= 1e-9);
  CHECK(std::abs(theta(17.8455995406).theta) <= 1e-6);
  CHECK(std::abs(theta(ref::kThetaZero).theta) <= 1e-12);
}

TEST_CASE("theta is increasing with positive derivative") {
  CHECK(theta(100.0).theta > theta(50.0).theta);
  CHECK(std::abs(theta(100.0).theta_deriv - ref::kThetaDeriv100) <= 1e-10);
  double prev = theta(7.05).theta;
  for (double t = 7.15; t < 400.0; t += 0.77) {
    const auto pv = theta(t);
    CHECK(pv.theta_deriv > 0.0);
    CHECK(pv.theta > prev);
    prev = pv.theta;
  }
}

TEST_CASE("theta rejects nonpositive heights") {
  CHECK_THROWS_AS(theta(0.0), std::domain_error);
  CHECK_THROWS_AS(theta(-3.0), std::domain_error);
}

TEST_CASE("theta branch handover is seamless near t = 30") {
  // asymptotic branch (>= 30) against the log-Gamma branch just below
  const double eps = 1e-9;
  const double below = theta(30.0 - eps).theta;
  const double above = theta(30.0 + eps).theta;
  const double slope = theta(30.0).theta_deriv;
  CHECK(std::abs(above - below - 2.0 * eps * slope) <= 1e-12);
}

TEST_CASE("hardy_z matches frozen values on both branches") {
  CHECK(std::abs(hardy_z(10.0).z - ref::kZ10) <= 1e-9);
  CHECK(std::abs(hardy_z(30.0).z - ref::kZ30) <= 1e-9);
  CHECK(std::abs(hardy_z(49.9).z - ref::kZ49_9) <= 1e-9);   // Euler-Maclaurin side
  CHECK(std::abs(hardy_z(50.1).z - ref::kZ50_1) <= 1e-6);   // Riemann-Siegel side
  CHECK(std::abs(hardy_z(50.0).z - ref::kZ50) <= 1e-6);
  CHECK(std::abs(hardy_z(100.0).z - ref::kZ100) <= 1e-6);
  CHECK(std::abs(hardy_z(1000.0).z - ref::kZ1000) <= 1e-6);
  CHECK(std::abs(hardy_z(10000.0).z - ref::kZ10000) <= 1e-6);
}

TEST_CASE("unguarded evaluation reaches down to t = 0") {
  CHECK(std::abs(ladderlab::detail::z_unchecked(0.0) - ref::kZetaHalf) <= 1e-12);
}

TEST_CASE("first critical-line zero localized by the oracle") {
  // independent sign change bracket around the frozen zero
  CHECK(testsupport::oracle_z(14.13) * testsupport::oracle_z(14.14) < 0.0);
  CHECK(std::abs(hardy_z(14.1347251417).z) <= 1e-5);
  CHECK(std::abs(hardy_z(ref::kFirstZero).z) <= 1e-9);
}

TEST_CASE("hardy_z agrees with the Euler-Maclaurin oracle at spot heights") {
  CHECK(std::abs(hardy_z(100.0).z - testsupport::oracle_z(100.0)) <= 1e-6);
  for (double t : {50.0, 61.7, 123.4, 517.0, 2048.5, 9999.25}) {
    CHECK(std::abs(hardy_z(t).z - testsupport::oracle_z(t)) <= 1e-6);
  }
}

TEST_CASE("hardy_z vs oracle on random heights") {
  std::mt19937 rng(20260813u);
  std::uniform_real_distribution<double> dist(10.0, 1e4);
  double worst = 0.0;
  for (int i = 0; i < 300; ++i) {
    const double t = dist(rng);
    worst = std::max(worst, std::abs(hardy_z(t).z - testsupport::oracle_z(t)));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("main-sum length changes do not produce jumps") {
  // N = floor(sqrt(t/2pi)) increments exactly at t = 2 pi m^2
  for (int m = 3; m <= 12; ++m) {
    const double boundary = 2.0 * 3.141592653589793 * m * m;
    for (double t : {boundary - 1e-7, boundary + 1e-7}) {
      CHECK(std::abs(hardy_z(t).z - testsupport::oracle_z(t)) <= 1e-6);
    }
  }
}

TEST_CASE("correction order trades accuracy as documented") {
  const double t = 1000.0;
  const double truth = testsupport::oracle_z(t);
  const double e0 = std::abs(hardy_z(t, 10.0, 0).z - truth);
  const double e1 = std::abs(hardy_z(t, 10.0, 1).z - truth);
  const double e4 = std::abs(hardy_z(t, 10.0, 4).z - truth);
  CHECK(e0 <= 0.5);
  CHECK(e1 <= 1e-2);
  CHECK(e1 < e0);
  CHECK(e4 <= 1e-6);
  CHECK_THROWS_AS(hardy_z(t, 10.0, 5), std::domain_error);
  CHECK_THROWS_AS(hardy_z(t, 10.0, -1), std::domain_error);
}

TEST_CASE("zsq is the exact square and nonnegative") {
  std::mt19937 rng(7u);
  std::uniform_real_distribution<double> dist(10.0, 5000.0);
  for (int i = 0; i < 200; ++i) {
    const auto zv = hardy_z(dist(rng));
    CHECK(zv.zsq == zv.z * zv.z);
    CHECK(zv.zsq >= 0.0);
  }
}

TEST_CASE("t_min guard is configurable") {
  CHECK_THROWS_AS(hardy_z(9.99), std::domain_error);
  CHECK(std::abs(hardy_z(5.0, 5.0).z) < 10.0);
  CHECK_THROWS_AS(hardy_z(4.99, 5.0), std::domain_error);
}

TEST_CASE("sign-change count on [10, 100] matches the zero count") {
  const int steps = 64 * 90;
  int impl_count = 0, oracle_count = 0;
  double prev_impl = hardy_z(10.0).z;
  double prev_oracle = testsupport::oracle_z(10.0);
  for (int i = 1; i <= steps; ++i) {
    const double t = 10.0 + 90.0 * i / steps;
    const double zi = hardy_z(t).z;
    const double zo = testsupport::oracle_z(t);
    if (zi * prev_impl < 0.0) ++impl_count;
    if (zo * prev_oracle < 0.0) ++oracle_count;
    prev_impl = zi;
    prev_oracle = zo;
  }
  CHECK(impl_count == 29);
  CHECK(oracle_count == 29);
}

TEST_CASE("zero density hint tracks the zero spacing") {
  // 29 zeros in [10,100]: average density ~0.32; the hint brackets it
  const double d = ladderlab::z_zero_density(55.0);
  CHECK(d > 0.2);
  CHECK(d < 0.5);
  CHECK(ladderlab::z_zero_density(1e6) > 1.5);
  CHECK(ladderlab::z_zero_density(1.0) == 0.2);
}
