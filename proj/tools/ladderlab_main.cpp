#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "ladderlab/energies.hpp"
#include "ladderlab/errors.hpp"
#include "ladderlab/ladder.hpp"
#include "ladderlab/primes.hpp"
#include "ladderlab/quadrature.hpp"
#include "ladderlab/reports.hpp"

// Exit statuses: 0 pass/ok, 1 verification failed (report still written),
// 2 usage or precondition, 3 solver, 4 quadrature, 5 resource, 6 other.

namespace {

using namespace ladderlab;

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + out_path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed for " + out_path);
  std::printf("report written to %s\n", out_path.c_str());
}

std::string resolve_ckpt(const std::string& flag) {
  const std::string path = !flag.empty() ? flag : default_checkpoint_path();
  if (path.empty()) {
    throw std::domain_error(
        "no checkpoint path: pass --checkpoint or set LADDERLAB_CKPT");
  }
  return path;
}

// Any load problem is a precondition failure, not an internal error.
CheckpointTable load_table(const std::string& flag) {
  const std::string path = resolve_ckpt(flag);
  try {
    CheckpointTable table = load_checkpoints(path);
    table.validate();
    return table;
  } catch (const std::exception& e) {
    throw std::domain_error(std::string("checkpoint unusable: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for the Jacob's ladder of Z(t)^2"};
  app.require_subcommand(1);

  double t = 0.0;
  double g = 0.0;
  double tol = 0.0;
  double trunc = 8.0;
  double step = 10.0;
  int k = 0;
  int parts = 0;
  int n = 1;
  std::string ckpt;
  std::string out_path;
  std::string format = "json";

  const auto add_output_flags = [&](CLI::App* sub, bool with_ckpt) {
    if (with_ckpt) {
      sub->add_option("--checkpoint", ckpt,
                      "checkpoint CSV path (default: LADDERLAB_CKPT)");
    }
    sub->add_option("--out", out_path, "write the report here, not stdout");
    sub->add_option("--format", format, "report format (json|csv)")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  auto* cmd_ckpt =
      app.add_subcommand("checkpoint", "build or extend a checkpoint table");
  cmd_ckpt->add_option("--t", t, "table upper end t_max")->required();
  cmd_ckpt->add_option("--step", step, "grid spacing (default 10)");
  cmd_ckpt->add_option("--checkpoint", ckpt,
                       "checkpoint CSV path (default: LADDERLAB_CKPT)");

  auto* cmd_ladder =
      app.add_subcommand("ladder", "I, phi1, omega, ztilde_sq at one point");
  cmd_ladder->add_option("--t", t, "evaluation point")->required();
  add_output_flags(cmd_ladder, true);

  auto* cmd_matrix = app.add_subcommand(
      "verify-matrix", "energy-equality constraint matrix S(T,g)");
  cmd_matrix->add_option("--t", t, "base point T")->required();
  cmd_matrix->add_option("--g", g, "interval length g")->required();
  cmd_matrix->add_option("--k", k, "matrix order (2..8)")->required();
  cmd_matrix->add_option("--tol", tol, "pass threshold (default 1e-6)");
  add_output_flags(cmd_matrix, true);

  auto* cmd_divide =
      app.add_subcommand("divide", "equal division of g across level k");
  cmd_divide->add_option("--t", t, "base point T")->required();
  cmd_divide->add_option("--g", g, "interval length g")->required();
  cmd_divide->add_option("--k", k, "ladder level (1..8)")->required();
  cmd_divide->add_option("--N,--n-parts", parts, "number of parts")
      ->required();
  cmd_divide->add_option("--tol", tol, "per-part threshold (default 1e-6)");
  add_output_flags(cmd_divide, true);

  auto* cmd_chain =
      app.add_subcommand("chain", "iterated gaussian chain vs (pi/2)^n");
  cmd_chain->add_option("--n", n, "chain dimension (1 or 2)")->required();
  cmd_chain->add_option("--t", t, "base point T")->required();
  cmd_chain->add_option("--k", k, "ladder level (1..8)")->required();
  cmd_chain->add_option("--trunc", trunc, "half-line truncation (default 8)");
  cmd_chain->add_option("--tol", tol,
                        "pass threshold (default 1e-3 for n=1, 5e-3 for n=2)");
  add_output_flags(cmd_chain, true);

  auto* cmd_comp = app.add_subcommand(
      "complementarity", "T - phi1(T) against (1-c) * pi(T)");
  cmd_comp->add_option("--t", t, "base point T (>= 1e3)")->required();
  add_output_flags(cmd_comp, true);

  auto* cmd_primes = app.add_subcommand("primes", "exact pi(T)");
  cmd_primes->add_option("--t", t, "threshold T (<= 1e8)")->required();
  add_output_flags(cmd_primes, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_ckpt->parsed()) {
      const std::string path = resolve_ckpt(ckpt);
      CheckpointTable existing;
      bool have = false;
      if (std::ifstream(path).good()) {
        existing = load_checkpoints(path);
        have = true;
      }
      if (have && existing.step == step && existing.t_max >= t) {
        std::printf("checkpoint: %s already covers t_max=%s (rows=%zu)\n",
                    path.c_str(), fmt17(t).c_str(), existing.grid.size());
        return 0;
      }
      const CheckpointTable table =
          build_checkpoints(t, step, have ? &existing : nullptr);
      save_checkpoints(table, path);
      std::printf("checkpoint: %s rows=%zu t_max=%s step=%s\n", path.c_str(),
                  table.grid.size(), fmt17(table.t_max).c_str(),
                  fmt17(step).c_str());
      return 0;
    }

    if (cmd_ladder->parsed()) {
      const CheckpointTable table = load_table(ckpt);
      LadderEvaluator eval(table);
      const double I = eval.cumulative(t);
      const double y = eval.phi1(t);
      const double om = eval.omega(t);
      const double zt = eval.ztilde_sq(t);
      std::string text;
      if (format == "json") {
        nlohmann::ordered_json doc;
        doc["T"] = t;
        doc["I"] = I;
        doc["phi1"] = y;
        doc["omega"] = om;
        doc["ztilde_sq"] = zt;
        text = doc.dump(2) + "\n";
      } else {
        text = "T,I,phi1,omega,ztilde_sq\n" + fmt17(t) + "," + fmt17(I) + "," +
               fmt17(y) + "," + fmt17(om) + "," + fmt17(zt) + "\n";
      }
      emit(text, out_path);
      return 0;
    }

    if (cmd_matrix->parsed()) {
      const CheckpointTable table = load_table(ckpt);
      const double use_tol = cmd_matrix->count("--tol") > 0 ? tol : 1e-6;
      const ConstraintReport report =
          energy_matrix(k, t, g, table, {}, use_tol);
      emit(format == "json" ? to_json(report) : to_csv(report), out_path);
      return report.pass ? 0 : 1;
    }

    if (cmd_divide->parsed()) {
      const CheckpointTable table = load_table(ckpt);
      const double use_tol = cmd_divide->count("--tol") > 0 ? tol : 1e-6;
      const ConstraintReport report =
          equal_division(k, t, g, parts, table, {}, use_tol);
      emit(format == "json" ? to_json(report) : to_csv(report), out_path);
      return report.pass ? 0 : 1;
    }

    if (cmd_chain->parsed()) {
      const CheckpointTable table = load_table(ckpt);
      const double value = gaussian_chain(n, t, k, trunc, table);
      const double target = std::pow(1.5707963267948966, n);
      const double use_tol =
          cmd_chain->count("--tol") > 0 ? tol : (n == 1 ? 1e-3 : 5e-3);
      const bool pass = std::abs(value - target) <= use_tol;
      std::string text;
      if (format == "json") {
        nlohmann::ordered_json doc;
        doc["n"] = n;
        doc["T"] = t;
        doc["k"] = k;
        doc["trunc"] = trunc;
        doc["value"] = value;
        doc["target"] = target;
        doc["residual"] = value - target;
        doc["pass"] = pass;
        text = doc.dump(2) + "\n";
      } else {
        text = "n,T,k,trunc,value,target,residual,pass\n" + std::to_string(n) +
               "," + fmt17(t) + "," + std::to_string(k) + "," + fmt17(trunc) +
               "," + fmt17(value) + "," + fmt17(target) + "," +
               fmt17(value - target) + "," + (pass ? "true" : "false") + "\n";
      }
      emit(text, out_path);
      return pass ? 0 : 1;
    }

    if (cmd_comp->parsed()) {
      const CheckpointTable table = load_table(ckpt);
      const Complementarity comp = complementarity(t, table);
      const PrimeCount pc = prime_count(t);
      std::string text;
      if (format == "json") {
        nlohmann::ordered_json doc;
        doc["T"] = t;
        doc["delta"] = comp.delta;
        doc["target"] = comp.target;
        doc["ratio"] = comp.ratio;
        doc["prime_count"] = pc.count;
        text = doc.dump(2) + "\n";
      } else {
        text = "T,delta,target,ratio,prime_count\n" + fmt17(t) + "," +
               fmt17(comp.delta) + "," + fmt17(comp.target) + "," +
               fmt17(comp.ratio) + "," + std::to_string(pc.count) + "\n";
      }
      emit(text, out_path);
      return 0;
    }

    if (cmd_primes->parsed()) {
      const PrimeCount pc = prime_count(t);
      std::string text;
      if (format == "json") {
        nlohmann::ordered_json doc;
        doc["T"] = t;
        doc["count"] = pc.count;
        text = doc.dump(2) + "\n";
      } else {
        text = "T,count\n" + fmt17(t) + "," + std::to_string(pc.count) + "\n";
      }
      emit(text, out_path);
      return 0;
    }
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const solver_error& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 3;
  } catch (const quadrature_error& e) {
    std::fprintf(stderr, "quadrature error: %s\n", e.what());
    return 4;
  } catch (const resource_error& e) {
    std::fprintf(stderr, "resource error: %s\n", e.what());
    return 5;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 6;
  }
  return 2;
}
