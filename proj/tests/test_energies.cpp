#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "ladderlab/energies.hpp"
#include "ladderlab/errors.hpp"
#include "ladderlab/ladder.hpp"
#include "ladderlab/quadrature.hpp"

using namespace ladderlab;

namespace ref {

constexpr double kSqrtHalfPi = 1.2533141373155002512;  // sqrt(pi/2)
constexpr double kHalfPi = 1.5707963267948966192;      // pi/2

}  // namespace ref

namespace {

const CheckpointTable& unit_table() {
  static const CheckpointTable table = build_checkpoints(1.7e4, 10.0);
  return table;
}

}  // namespace

TEST_CASE("gauss7 grid reproduces the gaussian half-line integrals") {
  const auto identity = [](double g) { return g; };

  double weight_sum = 0.0;
  for (const auto& [x, w] : detail::gauss7_grid(8.0)) {
    CHECK(x > 0.0);
    CHECK(x < 8.0);
    weight_sum += w;
  }
  CHECK(weight_sum == doctest::Approx(8.0).epsilon(1e-14));

  // omega = 0: int_0^inf exp(-x^2/2) dx = sqrt(pi/2)
  CHECK(std::abs(detail::gaussian_inner(0.0, 8.0, identity) -
                 ref::kSqrtHalfPi) <= 1e-6);

  // general omega: the transform equals sqrt(pi/2) exp(-omega^2/2)
  for (const double w : {0.5, 1.5, 3.0}) {
    CAPTURE(w);
    CHECK(std::abs(detail::gaussian_inner(w, 8.0, identity) -
                   ref::kSqrtHalfPi * std::exp(-0.5 * w * w)) <= 1e-8);
  }
}

TEST_CASE("energy(1,1) recovers g at the base level") {
  const EnergyEntry entry = energy(1, 1, 1e4, 1.0, unit_table());
  CHECK(entry.p == 1);
  CHECK(entry.s == 1);
  CHECK(std::abs(entry.value - 1.0) <= 1e-6);
  CHECK(entry.residual == entry.value - 1.0);
  CHECK(entry.quad_error >= 0.0);
  CHECK(entry.quad_error < 1e-6);
}

TEST_CASE("every matrix entry equals g") {
  const ConstraintReport report = energy_matrix(4, 1e4, 1.0, unit_table());
  CHECK(report.T == 1e4);
  CHECK(report.g == 1.0);
  CHECK(report.k == 4);
  REQUIRE(report.entries.size() == 10);
  CHECK(report.pass);
  CHECK(report.max_residual <= 1e-6);
  int expected_p = 1;
  int expected_s = 1;
  for (const EnergyEntry& entry : report.entries) {
    CAPTURE(entry.p);
    CAPTURE(entry.s);
    CHECK(entry.p == expected_p);
    CHECK(entry.s == expected_s);
    CHECK(entry.value >= 0.0);
    CHECK(std::abs(entry.residual) <= 1e-6);
    if (++expected_s > expected_p) {
      ++expected_p;
      expected_s = 1;
    }
  }
}

TEST_CASE("matrix entry count is triangular and g scales work") {
  const ConstraintReport wide = energy_matrix(5, 1e3, 1.0, unit_table());
  CHECK(wide.entries.size() == 15);
  CHECK(wide.pass);

  for (const double g : {0.1, 10.0}) {
    CAPTURE(g);
    const ConstraintReport report =
        energy_matrix(2, 1e3, g, unit_table(), {}, 1e-5);
    CHECK(report.pass);
    CHECK(report.max_residual <= 1e-5 * std::max(1.0, g));
  }
}

TEST_CASE("quadrature and tower routes agree") {
  for (const auto& [p, s] : {std::pair{1, 1}, {2, 1}, {2, 2}, {3, 2}}) {
    CAPTURE(p);
    CAPTURE(s);
    const EnergyEntry viaquad = energy(p, s, 1e4, 1.0, unit_table());
    const double viatower = energy_via_tower(p, s, 1e4, 1.0, unit_table());
    CHECK(std::abs(viaquad.value - viatower) <= 2e-6);
  }
}

TEST_CASE("tower route telescopes to g") {
  const LadderConfig cfg;
  for (const auto& [p, s] : {std::pair{1, 1}, {2, 2}, {3, 1}, {3, 3}}) {
    CAPTURE(p);
    CAPTURE(s);
    const double value = energy_via_tower(p, s, 1e4, 1.0, unit_table());
    CHECK(std::abs(value - 1.0) <= 10.0 * cfg.newton_tol * 1e4);
  }
}

TEST_CASE("g = 0 and sub-resolution g give the empty interval") {
  const EnergyEntry zero = energy(2, 2, 1e4, 0.0, unit_table());
  CHECK(zero.value == 0.0);
  CHECK(zero.residual == 0.0);
  CHECK(zero.quad_error == 0.0);
  CHECK(energy_via_tower(2, 2, 1e4, 0.0, unit_table()) == 0.0);

  const EnergyEntry tiny = energy(1, 1, 1e4, 1e-18, unit_table());
  CHECK(tiny.value == 0.0);
  CHECK(std::abs(tiny.residual) <= 1e-18);
}

TEST_CASE("equal division yields N parts of g/N") {
  const ConstraintReport report =
      equal_division(2, 1e4, 1.0, 10, unit_table());
  REQUIRE(report.entries.size() == 10);
  CHECK(report.pass);
  double sum = 0.0;
  for (int n = 1; n <= 10; ++n) {
    const EnergyEntry& entry = report.entries[static_cast<std::size_t>(n - 1)];
    CAPTURE(n);
    CHECK(entry.p == n);
    CHECK(entry.s == 2);
    CHECK(std::abs(entry.value - 0.1) <= 1e-6);
    sum += entry.value;
  }
  CHECK(std::abs(sum - 1.0) <= 1e-5);
}

TEST_CASE("single-part division is exactly the energy entry") {
  const ConstraintReport division =
      equal_division(2, 1e4, 1.0, 1, unit_table());
  const EnergyEntry entry = energy(2, 2, 1e4, 1.0, unit_table());
  REQUIRE(division.entries.size() == 1);
  CHECK(division.entries[0].value == entry.value);
  CHECK(division.entries[0].quad_error == entry.quad_error);
}

TEST_CASE("division scaling identity") {
  const double whole = energy(2, 2, 1e4, 1.0, unit_table()).value;
  const double tenth = energy(2, 2, 1e4, 0.1, unit_table()).value;
  CHECK(std::abs(whole - 10.0 * tenth) <= 1.1e-5);
}

TEST_CASE("translation invariance across base points") {
  CHECK(translation_check(1e4, 1.2e4, 1.0, 3, unit_table()));
  CHECK(translation_check(1e4, 1e4, 1.0, 2, unit_table()));
  CHECK_THROWS_AS(translation_check(1e4, 1.2e4, 0.0, 3, unit_table()),
                  std::domain_error);
}

TEST_CASE("pullback of an inner point lands r levels down") {
  LadderEvaluator eval(unit_table());
  const double T = 1e4;
  const double g = 1.0;
  const IterationTower lo_tower = eval.reverse_iter(T, 2);
  const IterationTower hi_tower = eval.reverse_iter(T + g, 2);
  const double t = 0.5 * (lo_tower.levels[2] + hi_tower.levels[2]);
  for (int r = 1; r <= 2; ++r) {
    CAPTURE(r);
    const double pulled = eval.phi1_iter(t, r);
    CHECK(pulled >= lo_tower.levels[static_cast<std::size_t>(2 - r)] - 1e-6);
    CHECK(pulled <= hi_tower.levels[static_cast<std::size_t>(2 - r)] + 1e-6);
  }
}

TEST_CASE("gaussian chain converges to powers of pi/2") {
  const double one = gaussian_chain(1, 1e4, 2, 8.0, unit_table());
  CHECK(std::abs(one - ref::kHalfPi) <= 1e-3);

  const double two = gaussian_chain(2, 1e4, 2, 8.0, unit_table());
  CHECK(std::abs(two - ref::kHalfPi * ref::kHalfPi) <= 5e-3);
  CHECK(two == doctest::Approx(one * one).epsilon(1e-12));
}

TEST_CASE("matrix reports are deterministic") {
  const ConstraintReport a = energy_matrix(3, 1e4, 1.0, unit_table());
  const ConstraintReport b = energy_matrix(3, 1e4, 1.0, unit_table());
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].value == b.entries[i].value);
    CHECK(a.entries[i].residual == b.entries[i].residual);
    CHECK(a.entries[i].quad_error == b.entries[i].quad_error);
  }
  CHECK(a.max_residual == b.max_residual);
  CHECK(a.pass == b.pass);
}

TEST_CASE("index, class, and cap guards") {
  CHECK_THROWS_AS(energy(1, 0, 1e4, 1.0, unit_table()), std::domain_error);
  CHECK_THROWS_AS(energy(1, 2, 1e4, 1.0, unit_table()), std::domain_error);
  CHECK_THROWS_AS(energy(9, 1, 1e4, 1.0, unit_table()), std::domain_error);
  CHECK_THROWS_AS(energy(1, 1, 1e4, -1.0, unit_table()), std::domain_error);
  CHECK_THROWS_AS(energy(1, 1, 1e4, 2000.0, unit_table()), std::domain_error);
  CHECK_THROWS_AS(energy(1, 1, 30.0, 1.0, unit_table()), std::domain_error);
  CHECK_THROWS_AS(energy_via_tower(2, 0, 1e4, 1.0, unit_table()),
                  std::domain_error);
  CHECK_THROWS_AS(energy_matrix(1, 1e4, 1.0, unit_table()),
                  std::domain_error);
  CHECK_THROWS_AS(energy_matrix(9, 1e4, 1.0, unit_table()),
                  std::domain_error);
  CHECK_THROWS_AS(energy_matrix(3, 1e4, 0.0, unit_table()),
                  std::domain_error);
  CHECK_THROWS_AS(equal_division(2, 1e4, 1.0, 0, unit_table()),
                  std::domain_error);
  CHECK_THROWS_AS(gaussian_chain(0, 1e4, 2, 8.0, unit_table()),
                  std::domain_error);
  CHECK_THROWS_AS(gaussian_chain(3, 1e4, 2, 8.0, unit_table()),
                  resource_error);
  CHECK_THROWS_AS(gaussian_chain(1, 1e4, 0, 8.0, unit_table()),
                  std::domain_error);
  CHECK_THROWS_AS(gaussian_chain(1, 1e4, 2, 0.0, unit_table()),
                  std::domain_error);
}
