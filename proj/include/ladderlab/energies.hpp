#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "ladderlab/ladder.hpp"

namespace ladderlab {

// Desk-scale caps: each extra reverse level multiplies quadrature cost.
inline constexpr int kMaxMatrixK = 8;
inline constexpr int kMaxChainN = 2;

struct EnergyEntry {
  int p = 0;  // row index (part index for division reports)
  int s = 0;  // column index, 1 <= s <= p
  double value = 0.0;
  double residual = 0.0;  // value - g (value - g/N for division parts)
  double quad_error = 0.0;
};

struct ConstraintReport {
  double T = 0.0;
  double g = 0.0;
  int k = 0;
  std::vector<EnergyEntry> entries;
  double max_residual = 0.0;  // max |residual|
  bool pass = false;
};

// Energy of the (p, s) matrix element: the integral of
// prod_{r=0}^{s-1} ztilde_sq(phi1_iter(t, r)) from T^p up to (T^{p-s} + g)^s,
// both limits taken from towers over T. Equals g by change of variables.
// g = 0 (or a g so small the limits collide in double precision) gives 0.
EnergyEntry energy(int p, int s, double T, double g,
                   const CheckpointTable& table, const LadderConfig& cfg = {});

// Same quantity computed without quadrature: phi1_iter(upper, s) -
// phi1_iter(lower, s). Independent cross-check of energy().
double energy_via_tower(int p, int s, double T, double g,
                        const CheckpointTable& table,
                        const LadderConfig& cfg = {});

// All k(k+1)/2 entries with 1 <= s <= p <= k; rows share one tower over T,
// so every row-p entry has the bit-identical lower limit T^p.
// pass <=> every |value - g| <= tol * max(1, g).
ConstraintReport energy_matrix(int k, double T, double g,
                               const CheckpointTable& table,
                               const LadderConfig& cfg = {}, double tol = 1e-6);

// True iff energy_matrix passes at both T and T2 with the same g, k, tol.
bool translation_check(double T, double T2, double g, int k,
                       const CheckpointTable& table,
                       const LadderConfig& cfg = {}, double tol = 1e-6);

// Splits [T, T+g] into N parts of width delta = g/N and integrates the
// depth-k energy over each reversed part. Entry n (p = n, s = k) holds the
// n-th part; residual = part - delta. pass <=> max |residual| <= tol and
// |sum of parts - g| <= N * tol.
ConstraintReport equal_division(int k, double T, double g, int N,
                                const CheckpointTable& table,
                                const LadderConfig& cfg = {},
                                double tol = 1e-6);

// Iterated Gaussian chain: factor = int_0^trunc dw int_0^trunc dx
// cos(w x) E(x) with E(x) = energy(k, k, T, exp(-x^2/2)).value, evaluated
// x-first on a fixed Gauss-7 grid; returns factor^n, approximately (pi/2)^n.
// n > kMaxChainN is a desk-scale resource error.
double gaussian_chain(int n, double T, int k, double trunc,
                      const CheckpointTable& table,
                      const LadderConfig& cfg = {});

namespace detail {

// Composite Gauss-7 nodes and weights over [0, trunc], panels of width
// <= 1 so cos(w x) stays resolved for w up to trunc.
std::vector<std::pair<double, double>> gauss7_grid(double trunc);

// sum_i w_i cos(omega x_i) values_i over a gauss7_grid.
double cosine_transform(double omega,
                        const std::vector<std::pair<double, double>>& grid,
                        const std::vector<double>& values);

// One inner integral A(omega) = int_0^trunc cos(omega x) E(x) dx with an
// injectable energy map; lets tests replace E by the exact identity g -> g.
double gaussian_inner(double omega, double trunc,
                      const std::function<double(double)>& energy_of_g);

}  // namespace detail

}  // namespace ladderlab
