#pragma once

#include <stdexcept>

namespace ladderlab {

// Root-finding failure: lost bracket or iteration cap exhausted.
class solver_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structural quadrature failure (bad interval, non-finite integrand).
// "Tolerance not met" is NOT an error: it is reported through
// QuadratureResult::converged so the best estimate stays usable.
class quadrature_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Desk-scale cap exceeded (sieve bound, chain dimension, panel budget).
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ladderlab
