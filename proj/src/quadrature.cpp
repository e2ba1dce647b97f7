#include "ladderlab/quadrature.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ladderlab/errors.hpp"
#include "ladderlab/zeta.hpp"
#include "gk_tables.inc"

namespace ladderlab {
namespace {

struct PanelEval {
  double value;
  double error;
};

// One Gauss7/Kronrod15 application; error estimate in QUADPACK style.
PanelEval gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv1[7], fv2[7];
  const double fc = f(c);
  double resk = kGK15Weights[7] * fc;
  double resg = kG7Weights[3] * fc;
  double resabs = kGK15Weights[7] * std::abs(fc);
  for (int i = 0; i < 7; ++i) {
    const double x = h * kGK15Nodes[i];
    fv1[i] = f(c - x);
    fv2[i] = f(c + x);
    const double fsum = fv1[i] + fv2[i];
    resk += kGK15Weights[i] * fsum;
    resabs += kGK15Weights[i] * (std::abs(fv1[i]) + std::abs(fv2[i]));
    if (i % 2 == 1) resg += kG7Weights[i / 2] * fsum;
  }
  const double mean = 0.5 * resk;
  double resasc = kGK15Weights[7] * std::abs(fc - mean);
  for (int i = 0; i < 7; ++i) {
    resasc += kGK15Weights[i] *
              (std::abs(fv1[i] - mean) + std::abs(fv2[i] - mean));
  }
  const double ah = std::abs(h);
  resabs *= ah;
  resasc *= ah;
  double err = std::abs(resk - resg) * ah;
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > DBL_MIN / (50.0 * DBL_EPSILON)) {
    err = std::max(err, 50.0 * DBL_EPSILON * resabs);
  }
  return PanelEval{resk * h, err};
}

struct KahanSum {
  double s = 0.0;
  double c = 0.0;
  void add(double x) {
    const double y = x - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

double sample_freq(const std::function<double(double)>& freq_hint, double a,
                   double b) {
  double fr = 0.0;
  for (const double t : {a, 0.5 * (a + b), b}) {
    fr = std::max(fr, freq_hint(t));
  }
  return fr;
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double tol,
                           const std::function<double(double)>& freq_hint,
                           const IntegrateOptions& opts) {
  if (a > b) throw std::domain_error("integrate: a > b");
  if (!(tol > 0.0)) throw std::domain_error("integrate: tol must be positive");
  if (a == b) return QuadratureResult{0.0, 0.0, 0, true};

  const double width = b - a;
  const double freq = sample_freq(freq_hint, a, b);
  double panel_width = width;
  if (freq > 0.0) {
    panel_width = 15.0 / (opts.nodes_per_osc * freq);
  }
  long n0 = 1;
  if (panel_width < width) {
    const double n_est = std::ceil(width / panel_width);
    n0 = (n_est >= static_cast<double>(opts.max_panels))
             ? opts.max_panels
             : static_cast<long>(n_est);
  }

  // rough pass fixes the tolerance scale before refinement
  std::vector<PanelEval> first(static_cast<std::size_t>(n0));
  double rough = 0.0;
  for (long i = 0; i < n0; ++i) {
    const double pa = a + width * static_cast<double>(i) / static_cast<double>(n0);
    const double pb = (i + 1 == n0)
                          ? b
                          : a + width * static_cast<double>(i + 1) /
                                    static_cast<double>(n0);
    first[static_cast<std::size_t>(i)] = gk15(f, pa, pb);
    rough += first[static_cast<std::size_t>(i)].value;
  }
  const double target = std::max(tol * std::abs(rough), tol);

  struct Work {
    double a, b;
    int depth;
    int stall;  // consecutive splits that failed to shrink the error
    PanelEval eval;
  };
  std::vector<Work> stack;
  stack.reserve(64);
  for (long i = n0 - 1; i >= 0; --i) {
    const double pa = a + width * static_cast<double>(i) / static_cast<double>(n0);
    const double pb = (i + 1 == n0)
                          ? b
                          : a + width * static_cast<double>(i + 1) /
                                    static_cast<double>(n0);
    stack.push_back(Work{pa, pb, 0, 0, first[static_cast<std::size_t>(i)]});
  }

  KahanSum value, err;
  long accepted = 0;
  bool budget_ok = true;
  while (!stack.empty()) {
    Work w = stack.back();
    stack.pop_back();
    const double share = target * ((w.b - w.a) / width);
    const bool panel_ok = w.eval.error <= share;
    // A panel whose error refuses to shrink under bisection is pinned to the
    // integrand's own noise floor (e.g. roundoff of a memoized integral fed
    // through a solver); bisecting it further burns the budget without
    // improving the estimate. Only panels already far below the global
    // target are eligible, so unresolved oscillations (whose error rides on
    // the local amplitude) are never mistaken for noise.
    const bool hopeless = w.stall >= 2;
    const bool can_split = w.depth < opts.max_depth && budget_ok && !hopeless &&
                           accepted + static_cast<long>(stack.size()) + 2 <
                               opts.max_panels;
    if (panel_ok || !can_split) {
      value.add(w.eval.value);
      err.add(w.eval.error);
      ++accepted;
    } else {
      const double mid = 0.5 * (w.a + w.b);
      const PanelEval left = gk15(f, w.a, mid);
      const PanelEval right = gk15(f, mid, w.b);
      const bool noise_scale = w.eval.error <= 0.01 * target;
      const bool no_gain = left.error + right.error > 0.9 * w.eval.error;
      const int stall = (noise_scale && no_gain) ? w.stall + 1 : 0;
      stack.push_back(Work{mid, w.b, w.depth + 1, stall, right});
      stack.push_back(Work{w.a, mid, w.depth + 1, stall, left});
      if (accepted + static_cast<long>(stack.size()) >= opts.max_panels) {
        budget_ok = false;
      }
    }
  }

  QuadratureResult out;
  out.value = value.s;
  out.error_estimate = err.s;
  out.panels = accepted;
  if (!std::isfinite(out.value) || !std::isfinite(out.error_estimate)) {
    throw quadrature_error("integrate: non-finite integrand encountered");
  }
  out.converged =
      out.error_estimate <= std::max(tol * std::abs(out.value), tol);
  return out;
}

void CheckpointTable::validate() const {
  if (grid.empty()) throw std::runtime_error("checkpoint table: empty grid");
  if (grid.front().first != 0.0 || grid.front().second != 0.0) {
    throw std::runtime_error("checkpoint table: first entry must be (0,0)");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i].first > grid[i - 1].first)) {
      throw std::runtime_error("checkpoint table: t not strictly increasing");
    }
    if (grid[i].second < grid[i - 1].second) {
      throw std::runtime_error("checkpoint table: I decreasing");
    }
  }
}

double cumulative_I(double T, const CheckpointTable& table) {
  if (T < 0.0) throw std::domain_error("cumulative_I: negative T");
  if (T == 0.0) return 0.0;
  table.validate();
  // last grid entry with t <= T
  const auto it = std::upper_bound(
      table.grid.begin(), table.grid.end(), T,
      [](double lhs, const std::pair<double, double>& e) { return lhs < e.first; });
  const auto& base = *(it - 1);
  if (base.first == T) return base.second;
  const auto rem = integrate(zsq_integrand, base.first, T, 1e-9, z_zero_density);
  if (!rem.converged) {
    throw quadrature_error("cumulative_I: remainder tolerance not met");
  }
  return base.second + rem.value;
}

CheckpointTable build_checkpoints(double t_max, double step,
                                  const CheckpointTable* resume_from,
                                  bool parallel) {
  if (!(t_max > 0.0) || !(step > 0.0)) {
    throw std::domain_error("build_checkpoints: t_max and step must be positive");
  }
  const auto n = static_cast<long>(std::floor(t_max / step + 1e-9));
  if (n < 1) throw std::domain_error("build_checkpoints: t_max below one step");

  CheckpointTable table;
  table.step = step;
  table.grid.reserve(static_cast<std::size_t>(n) + 1);
  table.grid.emplace_back(0.0, 0.0);
  long start = 0;
  if (resume_from != nullptr && !resume_from->grid.empty() &&
      resume_from->step == step) {
    resume_from->validate();
    long usable = 0;
    for (std::size_t i = 1; i < resume_from->grid.size(); ++i) {
      const double want = step * static_cast<double>(i);
      if (resume_from->grid[i].first != want || static_cast<long>(i) > n) break;
      usable = static_cast<long>(i);
    }
    for (long i = 1; i <= usable; ++i) {
      table.grid.push_back(resume_from->grid[static_cast<std::size_t>(i)]);
    }
    start = usable;
  }

  const long todo = n - start;
  std::vector<double> incs(static_cast<std::size_t>(todo));
  std::vector<signed char> ok(static_cast<std::size_t>(todo), 1);
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
  for (long i = 0; i < todo; ++i) {
    const double ta = step * static_cast<double>(start + i);
    const double tb = step * static_cast<double>(start + i + 1);
    const auto r = integrate(zsq_integrand, ta, tb, 1e-10, z_zero_density);
    incs[static_cast<std::size_t>(i)] = r.value;
    if (!r.converged) ok[static_cast<std::size_t>(i)] = 0;
  }
  for (long i = 0; i < todo; ++i) {
    if (!ok[static_cast<std::size_t>(i)]) {
      throw quadrature_error("build_checkpoints: increment tolerance not met near t=" +
                             std::to_string(step * static_cast<double>(start + i)));
    }
  }

  // serial fixed-order prefix keeps the table independent of thread count;
  // plain summation so a resumed build continues bit-identically (the only
  // carried state is the last I value)
  double acc = table.grid.back().second;
  for (long i = 0; i < todo; ++i) {
    acc += incs[static_cast<std::size_t>(i)];
    table.grid.emplace_back(step * static_cast<double>(start + i + 1), acc);
  }
  table.t_max = table.grid.back().first;
  table.validate();
  return table;
}

void save_checkpoints(const CheckpointTable& table, const std::string& path) {
  table.validate();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_checkpoints: cannot open " + path);
  out << "t,I\n";
  char buf[64];
  for (const auto& [t, I] : table.grid) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", t, I);
    out << buf;
  }
  if (!out) throw std::runtime_error("save_checkpoints: write failed for " + path);
}

CheckpointTable load_checkpoints(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_checkpoints: cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != "t,I") {
    throw std::runtime_error("load_checkpoints: bad header in " + path);
  }
  CheckpointTable table;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::runtime_error("load_checkpoints: malformed row in " + path);
    }
    char* end = nullptr;
    const double t = std::strtod(line.c_str(), &end);
    const double I = std::strtod(line.c_str() + comma + 1, &end);
    table.grid.emplace_back(t, I);
  }
  table.validate();
  if (table.grid.size() >= 2) {
    table.step = table.grid[1].first - table.grid[0].first;
  }
  table.t_max = table.grid.back().first;
  return table;
}

std::string default_checkpoint_path() {
  const char* env = std::getenv("LADDERLAB_CKPT");
  return env != nullptr ? std::string(env) : std::string();
}

double zsq_integrand(double t) {
  const double z = detail::z_unchecked(t);
  return z * z;
}

}  // namespace ladderlab
