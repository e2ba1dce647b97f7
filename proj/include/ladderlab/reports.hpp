#pragma once

#include <string>

#include "ladderlab/energies.hpp"

namespace ladderlab {

// {"T","g","k","entries":[{"p","s","value","residual","quad_error"}],
//  "max_residual","pass"} with keys in that order; trailing newline.
std::string to_json(const ConstraintReport& report);

// One `# T=... g=... k=... max_residual=... pass=...` metadata line, a
// `p,s,value,residual,quad_error` header, then one row per entry at 17
// significant digits (round-trip exact).
std::string to_csv(const ConstraintReport& report);

}  // namespace ladderlab
