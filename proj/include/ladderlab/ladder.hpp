#pragma once

#include <map>
#include <vector>

#include "ladderlab/quadrature.hpp"

namespace ladderlab {

struct LadderConfig {
  double c = 0.5772156649015329;      // Euler's constant
  double ln2pi = 1.8378770664093453;  // ln(2*pi)
  double c0 = 0.0;                    // Titchmarsh-Kober-Atkinson constant
  double newton_tol = 1e-13;          // residual scale for all solves
  int max_newton_iters = 80;
  double quad_tol = 1e-9;
};

// phi1 inverts F(y) = I(T) only where the inversion is well conditioned.
inline constexpr double kMinPhi1T = 50.0;

// Reverse tower [T, T^1, ..., T^k]: strictly increasing, phi1(levels[r]) =
// levels[r-1] within newton_tol scale for every r >= 1.
struct IterationTower {
  double base = 0.0;
  std::vector<double> levels;
  int k = 0;
};

// r-th reverse image of [T, T+g]: lo < hi for g > 0; segments of
// consecutive r are disjoint and ordered.
struct Segment {
  int r = 0;
  double lo = 0.0;
  double hi = 0.0;
  double g = 0.0;
};

struct Complementarity {
  double delta = 0.0;   // T - phi1(T)
  double target = 0.0;  // (1 - c) * pi(T)
  double ratio = 0.0;   // delta / target
};

// F(y) = y ln y + (c - ln2pi) y + c0; strictly increasing for the queried
// domain since F'(y) = ln y + 1 + c - ln2pi > 0 for y > 1.31.
double F(double y, const LadderConfig& cfg = {});

// Ladder engine over one checkpoint table. I(t) queries anchor at the
// nearest previously computed value (grid or memo) below t, so clustered
// queries cost only short integrals. Results are deterministic for a fixed
// query order and meet the same tolerances as the one-shot wrappers.
class LadderEvaluator {
 public:
  explicit LadderEvaluator(const CheckpointTable& table,
                           const LadderConfig& cfg = {});

  // Memoized I(t) = int_0^t Z^2; accurate to quad_tol of the local increment.
  double cumulative(double t);

  // Unique y with F(y) = I(t); |F(y) - I(t)| <= newton_tol * (1 + |I(t)|).
  double phi1(double t);

  // ln(phi1(t)) + 1 + c - ln2pi, the exact derivative weight of F(phi1(t)).
  double omega(double t);

  // Z(t)^2 / omega(t) = d phi1 / dt; nonnegative.
  double ztilde_sq(double t);

  // r-fold phi1; r = 0 returns t exactly. Throws std::domain_error naming
  // the failing level when an iterate drops below kMinPhi1T.
  double phi1_iter(double t, int r);

  // Solves phi1(x) = target for the unique x > target;
  // |phi1(x) - target| <= newton_tol * (1 + |target|). A hint > target
  // replaces the default initial guess target + (1-c)*target/ln(target).
  double reverse_step(double target, double hint = 0.0);

  // Tower [y, y^1, ..., y^k] of repeated reverse_step.
  IterationTower reverse_iter(double y, int k);

  const LadderConfig& config() const { return cfg_; }
  const CheckpointTable& table() const { return table_; }

 private:
  double solve_forward(double target_I, double lo, double hi,
                       double guess) const;

  const CheckpointTable& table_;
  LadderConfig cfg_;
  double kappa_;                    // 1 + c - ln2pi
  std::map<double, double> memo_;  // exact-key I(t) cache
};

// One-shot wrappers; each builds a fresh evaluator, so results never depend
// on earlier queries.
double phi1(double T, const CheckpointTable& table,
            const LadderConfig& cfg = {});
double omega(double t, const CheckpointTable& table,
             const LadderConfig& cfg = {});
double ztilde_sq(double t, const CheckpointTable& table,
                 const LadderConfig& cfg = {});
double phi1_iter(double t, int r, const CheckpointTable& table,
                 const LadderConfig& cfg = {});
IterationTower reverse_iter(double y, int k, const CheckpointTable& table,
                            const LadderConfig& cfg = {});
Segment segment(int r, double T, double g, const CheckpointTable& table,
                const LadderConfig& cfg = {});

// Distance segment(r).lo - segment(r-1).hi between consecutive segments.
double gap(int r, double T, double g, const CheckpointTable& table,
           const LadderConfig& cfg = {});

// delta = T - phi1(T) against target = (1-c) * pi(T); requires T >= 1e3.
Complementarity complementarity(double T, const CheckpointTable& table,
                                const LadderConfig& cfg = {});

}  // namespace ladderlab
