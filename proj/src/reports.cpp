#include "ladderlab/reports.hpp"

#include <cstdio>
#include <string>

#include "json.hpp"

namespace ladderlab {

namespace {

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

std::string to_json(const ConstraintReport& report) {
  nlohmann::ordered_json doc;
  doc["T"] = report.T;
  doc["g"] = report.g;
  doc["k"] = report.k;
  doc["entries"] = nlohmann::ordered_json::array();
  for (const EnergyEntry& entry : report.entries) {
    nlohmann::ordered_json row;
    row["p"] = entry.p;
    row["s"] = entry.s;
    row["value"] = entry.value;
    row["residual"] = entry.residual;
    row["quad_error"] = entry.quad_error;
    doc["entries"].push_back(std::move(row));
  }
  doc["max_residual"] = report.max_residual;
  doc["pass"] = report.pass;
  return doc.dump(2) + "\n";
}

std::string to_csv(const ConstraintReport& report) {
  std::string out = "# T=" + fmt17(report.T) + " g=" + fmt17(report.g) +
                    " k=" + std::to_string(report.k) +
                    " max_residual=" + fmt17(report.max_residual) +
                    " pass=" + (report.pass ? "true" : "false") + "\n";
  out += "p,s,value,residual,quad_error\n";
  for (const EnergyEntry& entry : report.entries) {
    out += std::to_string(entry.p) + "," + std::to_string(entry.s) + "," +
           fmt17(entry.value) + "," + fmt17(entry.residual) + "," +
           fmt17(entry.quad_error) + "\n";
  }
  return out;
}

}  // namespace ladderlab
