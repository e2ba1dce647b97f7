#include "ladderlab/energies.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <string>

#include "ladderlab/errors.hpp"
#include "ladderlab/zeta.hpp"

#include "gk_tables.inc"

namespace ladderlab {
namespace {

void check_indices(const char* who, int p, int s) {
  if (s < 1) {
    throw std::domain_error(std::string(who) + ": s must be at least 1");
  }
  if (p < s) {
    throw std::domain_error(std::string(who) + ": requires s <= p");
  }
  if (p > kMaxMatrixK) {
    throw std::domain_error(std::string(who) + ": p exceeds the desk cap of " +
                            std::to_string(kMaxMatrixK));
  }
}

void check_class(const char* who, double T, double g) {
  if (g < 0.0) {
    throw std::domain_error(std::string(who) + ": g must be nonnegative");
  }
  if (!(T >= kMinPhi1T)) {
    throw std::domain_error(std::string(who) + ": T must be at least 50");
  }
  if (g > T / std::log(T)) {
    throw std::domain_error(std::string(who) +
                            ": g outside the class g <= T / ln T");
  }
}

// prod_{r=0}^{s-1} ztilde_sq(phi1_iter(t, r)), walking the forward iterates.
double pullback_integrand(LadderEvaluator& eval, double t, int s) {
  double prod = 1.0;
  double cur = t;
  for (int r = 0; r < s; ++r) {
    prod *= eval.ztilde_sq(cur);
    if (r + 1 < s) cur = eval.phi1(cur);
  }
  return prod;
}

// Energy of entry (p, s) with the lower tower already built over T.
EnergyEntry energy_impl(LadderEvaluator& eval, const IterationTower& tower,
                        int p, int s, double g) {
  EnergyEntry entry;
  entry.p = p;
  entry.s = s;
  if (g == 0.0) return entry;

  const double lower = tower.levels[static_cast<std::size_t>(p)];
  const double base = tower.levels[static_cast<std::size_t>(p - s)];
  const double upper =
      eval.reverse_iter(base + g, s).levels[static_cast<std::size_t>(s)];
  if (!(upper > lower)) {
    // g below the double-precision resolution of the limits
    entry.residual = -g;
    return entry;
  }

  const auto result = integrate(
      [&eval, s](double t) { return pullback_integrand(eval, t, s); }, lower,
      upper, eval.config().quad_tol,
      [s](double t) { return s * z_zero_density(t); });
  // An exhausted budget still yields the best estimate; quad_error carries
  // the achieved bound and the residual check downstream passes judgment.
  entry.value = result.value;
  entry.residual = result.value - g;
  entry.quad_error = result.error_estimate;
  return entry;
}

}  // namespace

EnergyEntry energy(int p, int s, double T, double g,
                   const CheckpointTable& table, const LadderConfig& cfg) {
  check_indices("energy", p, s);
  check_class("energy", T, g);
  LadderEvaluator eval(table, cfg);
  const IterationTower tower = eval.reverse_iter(T, p);
  return energy_impl(eval, tower, p, s, g);
}

double energy_via_tower(int p, int s, double T, double g,
                        const CheckpointTable& table,
                        const LadderConfig& cfg) {
  check_indices("energy_via_tower", p, s);
  check_class("energy_via_tower", T, g);
  if (g == 0.0) return 0.0;
  LadderEvaluator eval(table, cfg);
  const IterationTower tower = eval.reverse_iter(T, p);
  const double lower = tower.levels[static_cast<std::size_t>(p)];
  const double base = tower.levels[static_cast<std::size_t>(p - s)];
  const double upper =
      eval.reverse_iter(base + g, s).levels[static_cast<std::size_t>(s)];
  if (!(upper > lower)) return 0.0;
  return eval.phi1_iter(upper, s) - eval.phi1_iter(lower, s);
}

ConstraintReport energy_matrix(int k, double T, double g,
                               const CheckpointTable& table,
                               const LadderConfig& cfg, double tol) {
  if (k < 2 || k > kMaxMatrixK) {
    throw std::domain_error("energy_matrix: k must lie in [2, " +
                            std::to_string(kMaxMatrixK) + "]");
  }
  if (!(g > 0.0)) throw std::domain_error("energy_matrix: g must be positive");
  if (!(tol > 0.0)) throw std::domain_error("energy_matrix: tol must be positive");
  check_class("energy_matrix", T, g);

  // One tower serves every row, so rows share bit-identical lower limits.
  const IterationTower tower = [&] {
    LadderEvaluator eval(table, cfg);
    return eval.reverse_iter(T, k);
  }();

  ConstraintReport report;
  report.T = T;
  report.g = g;
  report.k = k;
  std::vector<std::pair<int, int>> index;
  index.reserve(static_cast<std::size_t>(k) * (k + 1) / 2);
  for (int p = 1; p <= k; ++p) {
    for (int s = 1; s <= p; ++s) index.emplace_back(p, s);
  }
  report.entries.resize(index.size());

  // Entries are independent given the shared read-only tower; each works on
  // its own evaluator, so values do not depend on scheduling. Exceptions may
  // not cross the parallel region; the first one is re-thrown after it.
  std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < static_cast<long>(index.size()); ++i) {
    try {
      LadderEvaluator eval(table, cfg);
      const auto [p, s] = index[static_cast<std::size_t>(i)];
      report.entries[static_cast<std::size_t>(i)] =
          energy_impl(eval, tower, p, s, g);
    } catch (...) {
#pragma omp critical
      if (failure == nullptr) failure = std::current_exception();
    }
  }
  if (failure != nullptr) std::rethrow_exception(failure);

  for (const EnergyEntry& entry : report.entries) {
    report.max_residual = std::max(report.max_residual, std::abs(entry.residual));
  }
  report.pass = report.max_residual <= tol * std::max(1.0, g);
  return report;
}

bool translation_check(double T, double T2, double g, int k,
                       const CheckpointTable& table, const LadderConfig& cfg,
                       double tol) {
  if (!(g > 0.0)) {
    throw std::domain_error("translation_check: g must be positive");
  }
  return energy_matrix(k, T, g, table, cfg, tol).pass &&
         energy_matrix(k, T2, g, table, cfg, tol).pass;
}

ConstraintReport equal_division(int k, double T, double g, int N,
                                const CheckpointTable& table,
                                const LadderConfig& cfg, double tol) {
  if (k < 1 || k > kMaxMatrixK) {
    throw std::domain_error("equal_division: k must lie in [1, " +
                            std::to_string(kMaxMatrixK) + "]");
  }
  if (N < 1) throw std::domain_error("equal_division: N must be at least 1");
  if (!(g > 0.0)) throw std::domain_error("equal_division: g must be positive");
  if (!(tol > 0.0)) {
    throw std::domain_error("equal_division: tol must be positive");
  }
  check_class("equal_division", T, g);
  const double delta = g / N;

  LadderEvaluator eval(table, cfg);
  // Consecutive parts share their boundary tower exactly, so the parts
  // telescope to the full interval with no seam error.
  std::vector<double> bounds(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) {
    bounds[static_cast<std::size_t>(n)] =
        eval.reverse_iter(T + n * delta, k).levels[static_cast<std::size_t>(k)];
  }

  ConstraintReport report;
  report.T = T;
  report.g = g;
  report.k = k;
  report.entries.reserve(static_cast<std::size_t>(N));
  double sum = 0.0;
  for (int n = 1; n <= N; ++n) {
    const double lower = bounds[static_cast<std::size_t>(n - 1)];
    const double upper = bounds[static_cast<std::size_t>(n)];
    EnergyEntry entry;
    entry.p = n;
    entry.s = k;
    if (upper > lower) {
      const auto result = integrate(
          [&eval, k](double t) { return pullback_integrand(eval, t, k); },
          lower, upper, cfg.quad_tol,
          [k](double t) { return k * z_zero_density(t); });
      entry.value = result.value;
      entry.quad_error = result.error_estimate;
    }
    entry.residual = entry.value - delta;
    sum += entry.value;
    report.max_residual = std::max(report.max_residual, std::abs(entry.residual));
    report.entries.push_back(entry);
  }
  report.pass =
      report.max_residual <= tol && std::abs(sum - g) <= N * tol;
  return report;
}

namespace detail {

std::vector<std::pair<double, double>> gauss7_grid(double trunc) {
  if (!(trunc > 0.0)) {
    throw std::domain_error("gauss7_grid: trunc must be positive");
  }
  // Gauss nodes sit at the odd Kronrod indices; weights pair outermost-first.
  const double offsets[7] = {-kGK15Nodes[1], -kGK15Nodes[3], -kGK15Nodes[5],
                             0.0,            kGK15Nodes[5],  kGK15Nodes[3],
                             kGK15Nodes[1]};
  const double weights[7] = {kG7Weights[0], kG7Weights[1], kG7Weights[2],
                             kG7Weights[3], kG7Weights[2], kG7Weights[1],
                             kG7Weights[0]};
  const int panels = static_cast<int>(std::ceil(trunc));
  const double width = trunc / panels;
  std::vector<std::pair<double, double>> grid;
  grid.reserve(static_cast<std::size_t>(panels) * 7);
  for (int j = 0; j < panels; ++j) {
    const double mid = (j + 0.5) * width;
    const double half = 0.5 * width;
    for (int i = 0; i < 7; ++i) {
      grid.emplace_back(mid + half * offsets[i], half * weights[i]);
    }
  }
  return grid;
}

double cosine_transform(double omega,
                        const std::vector<std::pair<double, double>>& grid,
                        const std::vector<double>& values) {
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    sum += grid[i].second * std::cos(omega * grid[i].first) * values[i];
  }
  return sum;
}

double gaussian_inner(double omega, double trunc,
                      const std::function<double(double)>& energy_of_g) {
  const auto grid = gauss7_grid(trunc);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = energy_of_g(std::exp(-0.5 * grid[i].first * grid[i].first));
  }
  return cosine_transform(omega, grid, values);
}

}  // namespace detail

double gaussian_chain(int n, double T, int k, double trunc,
                      const CheckpointTable& table, const LadderConfig& cfg) {
  if (n < 1) throw std::domain_error("gaussian_chain: n must be at least 1");
  if (n > kMaxChainN) {
    throw resource_error("gaussian_chain: n > " + std::to_string(kMaxChainN) +
                         " exceeds the desk-scale cap");
  }
  if (k < 1 || k > kMaxMatrixK) {
    throw std::domain_error("gaussian_chain: k must lie in [1, " +
                            std::to_string(kMaxMatrixK) + "]");
  }
  check_class("gaussian_chain", T, 1.0);  // g = exp(-x^2/2) <= 1

  LadderEvaluator eval(table, cfg);
  const IterationTower tower = eval.reverse_iter(T, k);
  const auto grid = detail::gauss7_grid(trunc);
  std::vector<double> E(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double g = std::exp(-0.5 * grid[i].first * grid[i].first);
    E[i] = energy_impl(eval, tower, k, k, g).value;
  }

  const auto outer = integrate(
      [&](double w) { return detail::cosine_transform(w, grid, E); }, 0.0,
      trunc, cfg.quad_tol, [](double) { return 0.2; });
  if (!outer.converged) {
    throw quadrature_error("gaussian_chain: outer tolerance not met");
  }
  double result = outer.value;
  for (int i = 1; i < n; ++i) result *= outer.value;
  return result;
}

}  // namespace ladderlab
