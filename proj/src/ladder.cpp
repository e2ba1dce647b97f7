#include "ladderlab/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ladderlab/errors.hpp"
#include "ladderlab/primes.hpp"
#include "ladderlab/zeta.hpp"

namespace ladderlab {

double F(double y, const LadderConfig& cfg) {
  if (!(y > 1.5)) throw std::domain_error("F: y must exceed 1.5");
  return y * std::log(y) + (cfg.c - cfg.ln2pi) * y + cfg.c0;
}

LadderEvaluator::LadderEvaluator(const CheckpointTable& table,
                                 const LadderConfig& cfg)
    : table_(table), cfg_(cfg), kappa_(1.0 + cfg.c - cfg.ln2pi) {
  if (!(cfg.newton_tol > 0.0) || !(cfg.quad_tol > 0.0)) {
    throw std::domain_error("LadderConfig: tolerances must be positive");
  }
  if (cfg.max_newton_iters < 1) {
    throw std::domain_error("LadderConfig: max_newton_iters must be positive");
  }
  table_.validate();
}

double LadderEvaluator::cumulative(double t) {
  if (t < 0.0) throw std::domain_error("cumulative: negative t");
  if (t == 0.0) return 0.0;
  const auto hit = memo_.find(t);
  if (hit != memo_.end()) return hit->second;

  // Nearest anchor at or below t: checkpoint grid first, then the memo.
  const auto git = std::upper_bound(
      table_.grid.begin(), table_.grid.end(), t,
      [](double lhs, const std::pair<double, double>& e) {
        return lhs < e.first;
      });
  double anchor_t = (git - 1)->first;
  double anchor_I = (git - 1)->second;
  const auto mit = memo_.upper_bound(t);
  if (mit != memo_.begin()) {
    const auto prev = std::prev(mit);
    if (prev->first > anchor_t) {
      anchor_t = prev->first;
      anchor_I = prev->second;
    }
  }

  double value = anchor_I;
  if (t > anchor_t) {
    const auto rem =
        integrate(zsq_integrand, anchor_t, t, cfg_.quad_tol, z_zero_density);
    if (!rem.converged) {
      throw quadrature_error("cumulative: remainder tolerance not met at t = " +
                             std::to_string(t));
    }
    value += rem.value;
  }
  memo_.emplace(t, value);
  return value;
}

double LadderEvaluator::solve_forward(double target_I, double lo, double hi,
                                      double guess) const {
  // F is increasing and convex here, so the bracket shrinks monotonically.
  if (F(lo, cfg_) > target_I || F(hi, cfg_) < target_I) {
    throw solver_error("phi1: I(T) lies outside [F(T/2), F(T)]");
  }
  // Iterations are cheap, so the solve runs to the rounding floor of F;
  // newton_tol remains the guaranteed ceiling on the accepted residual.
  const double tol = cfg_.newton_tol * (1.0 + std::abs(target_I));
  const double floor_tol =
      4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(target_I));
  double y = std::clamp(guess, lo, hi);
  double best_y = y;
  double best_r = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < cfg_.max_newton_iters; ++iter) {
    const double r = F(y, cfg_) - target_I;
    if (std::abs(r) < best_r) {
      best_r = std::abs(r);
      best_y = y;
    }
    if (std::abs(r) <= floor_tol) return y;
    (r > 0.0 ? hi : lo) = y;
    double next = y - r / (std::log(y) + kappa_);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == y) break;  // bracket at machine width
    y = next;
  }
  if (best_r <= tol) return best_y;
  throw solver_error("phi1: Newton did not converge in max_newton_iters");
}

double LadderEvaluator::phi1(double t) {
  if (!(t >= kMinPhi1T)) {
    throw std::domain_error("phi1: t must be at least 50");
  }
  const double target_I = cumulative(t);
  const double guess = t - (1.0 - cfg_.c) * t / std::log(t);
  return solve_forward(target_I, 0.5 * t, t, guess);
}

double LadderEvaluator::omega(double t) {
  return std::log(phi1(t)) + kappa_;
}

double LadderEvaluator::ztilde_sq(double t) {
  const double w = omega(t);  // also enforces the phi1 domain guard
  return hardy_z(t).zsq / w;
}

double LadderEvaluator::phi1_iter(double t, int r) {
  if (r < 0) throw std::domain_error("phi1_iter: r must be nonnegative");
  double cur = t;
  for (int level = 1; level <= r; ++level) {
    if (!(cur >= kMinPhi1T)) {
      throw std::domain_error("phi1_iter: iterate left the phi1 domain at level " +
                              std::to_string(level));
    }
    cur = phi1(cur);
  }
  return cur;
}

double LadderEvaluator::reverse_step(double target, double hint) {
  if (!(target >= kMinPhi1T)) {
    throw std::domain_error("reverse_step: target must be at least 50");
  }
  // The solve runs past newton_tol to the noise floor of phi1 itself and
  // keeps the best iterate; newton_tol stays the guaranteed ceiling.
  const double tol = cfg_.newton_tol * (1.0 + std::abs(target));
  const double floor_tol = 1e-3 * tol;
  double lo = target;  // phi1(lo) < target since phi1(x) < x
  double hi = std::numeric_limits<double>::infinity();
  double grow = 0.5 * (1.0 - cfg_.c) * target / std::log(target);
  double x = hint > target ? hint : target + 2.0 * grow;
  double best_x = x;
  double best_r = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < cfg_.max_newton_iters; ++iter) {
    const double phi_x = phi1(x);
    const double r = phi_x - target;
    if (std::abs(r) < best_r) {
      best_r = std::abs(r);
      best_x = x;
    }
    if (std::abs(r) <= floor_tol) return x;
    (r > 0.0 ? hi : lo) = x;
    if (std::isfinite(hi) &&
        hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
      break;  // bracket at machine width; residual limited by I noise
    }
    double next = std::numeric_limits<double>::quiet_NaN();
    if (std::isfinite(hi)) {
      // Newton with the exact derivative phi1' = Z^2/omega, guarded against
      // the dead steps it takes near zeros of Z.
      const double zt2 = hardy_z(x).zsq / (std::log(phi_x) + kappa_);
      if (zt2 > 0.0) next = x - r / zt2;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    } else {
      // No upper bound yet: march right in doubling steps. The root sits
      // near target + (1-c)*target/omega, within a few grow units.
      next = x + grow;
      grow *= 2.0;
    }
    if (next == x) break;
    x = next;
  }
  if (best_r <= tol) return best_x;
  throw solver_error("reverse_step: no convergence solving phi1(x) = " +
                     std::to_string(target));
}

IterationTower LadderEvaluator::reverse_iter(double y, int k) {
  if (k < 0) throw std::domain_error("reverse_iter: k must be nonnegative");
  if (!(y >= kMinPhi1T)) {
    throw std::domain_error("reverse_iter: y must be at least 50");
  }
  IterationTower tower;
  tower.base = y;
  tower.k = k;
  tower.levels.reserve(static_cast<std::size_t>(k) + 1);
  tower.levels.push_back(y);
  for (int level = 1; level <= k; ++level) {
    double next = 0.0;
    try {
      next = reverse_step(tower.levels.back());
    } catch (const solver_error& e) {
      throw solver_error("reverse_iter: level " + std::to_string(level) +
                         ": " + e.what());
    }
    if (!(next > tower.levels.back())) {
      throw solver_error("reverse_iter: tower ordering failed at level " +
                         std::to_string(level));
    }
    tower.levels.push_back(next);
  }
  return tower;
}

double phi1(double T, const CheckpointTable& table, const LadderConfig& cfg) {
  return LadderEvaluator(table, cfg).phi1(T);
}

double omega(double t, const CheckpointTable& table, const LadderConfig& cfg) {
  return LadderEvaluator(table, cfg).omega(t);
}

double ztilde_sq(double t, const CheckpointTable& table,
                 const LadderConfig& cfg) {
  return LadderEvaluator(table, cfg).ztilde_sq(t);
}

double phi1_iter(double t, int r, const CheckpointTable& table,
                 const LadderConfig& cfg) {
  return LadderEvaluator(table, cfg).phi1_iter(t, r);
}

IterationTower reverse_iter(double y, int k, const CheckpointTable& table,
                            const LadderConfig& cfg) {
  return LadderEvaluator(table, cfg).reverse_iter(y, k);
}

Segment segment(int r, double T, double g, const CheckpointTable& table,
                const LadderConfig& cfg) {
  if (r < 0) throw std::domain_error("segment: r must be nonnegative");
  if (!(g > 0.0)) throw std::domain_error("segment: g must be positive");
  LadderEvaluator eval(table, cfg);
  Segment seg;
  seg.r = r;
  seg.g = g;
  seg.lo = eval.reverse_iter(T, r).levels[static_cast<std::size_t>(r)];
  seg.hi = eval.reverse_iter(T + g, r).levels[static_cast<std::size_t>(r)];
  return seg;
}

double gap(int r, double T, double g, const CheckpointTable& table,
           const LadderConfig& cfg) {
  if (r < 1) throw std::domain_error("gap: r must be at least 1");
  if (!(g > 0.0)) throw std::domain_error("gap: g must be positive");
  LadderEvaluator eval(table, cfg);
  const double lo_r =
      eval.reverse_iter(T, r).levels[static_cast<std::size_t>(r)];
  const double hi_prev =
      eval.reverse_iter(T + g, r - 1).levels[static_cast<std::size_t>(r - 1)];
  return lo_r - hi_prev;
}

Complementarity complementarity(double T, const CheckpointTable& table,
                                const LadderConfig& cfg) {
  if (!(T >= 1e3)) {
    throw std::domain_error("complementarity: T must be at least 1e3");
  }
  LadderEvaluator eval(table, cfg);
  Complementarity result;
  result.delta = T - eval.phi1(T);
  result.target =
      (1.0 - cfg.c) * static_cast<double>(prime_count(T).count);
  result.ratio = result.delta / result.target;
  return result;
}

}  // namespace ladderlab
