#pragma once

#include <string>
#include <vector>

#include "softttl/evaluate.hpp"
#include "softttl/policy.hpp"

namespace softttl {

struct Diagnostics {
  int outer_iterations = 0;       // dual bisection steps
  double capacity_residual = 0.0; // sum C_i - C (signed)
  double kkt_residual = 0.0;      // max interior stationarity residual
  double duality_gap = 0.0;       // dual bound minus achieved primal
  int inner_fallbacks = 0;        // fixed-point rescues by scalar bisection
  long long nodes_explored = 0;   // exact-search effort, when applicable
  std::string method;
};

// Outcome of any of the policy-class solvers. `gamma` is the capacity
// multiplier (utility per bit); NaN in max-min mode where no single
// multiplier exists. `aggregate` is the alpha-fair objective, or the
// minimum per-file utility in max-min mode.
struct SolveResult {
  std::vector<Policy> policies;
  double gamma = 0.0;
  std::vector<FileEval> per_file;
  double aggregate = 0.0;
  Diagnostics diag;

  double total_occupancy() const {
    double c = 0.0;
    for (const auto& f : per_file) c += f.C;
    return c;
  }
};

}  // namespace softttl
