#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace ladderlab {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // >= 0
  long panels = 0;              // accepted panels
  bool converged = true;        // false: panel budget hit before tolerance
};

struct IntegrateOptions {
  double nodes_per_osc = 8.0;  // nodes per expected zero spacing
  long max_panels = 400000;    // accepted-panel budget per call
  int max_depth = 48;          // bisection depth per initial panel
};

// Adaptive Gauss7/Kronrod15 with oscillation-aware seeding: initial panels
// narrow enough that a 15-node panel places nodes_per_osc nodes per
// 1/freq_hint(t). Target |value - truth| <= max(tol*|value|, tol); if the
// budget runs out first, the best estimate comes back with converged=false.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double tol,
                           const std::function<double(double)>& freq_hint,
                           const IntegrateOptions& opts = {});

// Monotone grid of (t, I(t)) with I(T) = int_0^T Z^2 dt.
struct CheckpointTable {
  std::vector<std::pair<double, double>> grid;  // strictly increasing t
  double step = 0.0;
  double t_max = 0.0;

  // Throws std::runtime_error on violated invariants (first entry (0,0),
  // t strictly increasing, I non-decreasing).
  void validate() const;
};

// I(T) from the nearest checkpoint at or below T plus an integrated
// remainder; T past the grid extends on demand from the last checkpoint.
double cumulative_I(double T, const CheckpointTable& table);

// Grid at multiples of step up to t_max, each increment integrated at
// 1e-10 relative tolerance. Resumable from a compatible partial table;
// increments run in parallel, the prefix sum is serial and fixed-order.
CheckpointTable build_checkpoints(double t_max, double step,
                                  const CheckpointTable* resume_from = nullptr,
                                  bool parallel = true);

// CSV persistence: header `t,I`, 17 significant digits (round-trip exact).
void save_checkpoints(const CheckpointTable& table, const std::string& path);
CheckpointTable load_checkpoints(const std::string& path);

// Value of LADDERLAB_CKPT, or empty when unset.
std::string default_checkpoint_path();

// Z(t)^2 and its oscillation hint, shared by every I(T) consumer.
double zsq_integrand(double t);

}  // namespace ladderlab
