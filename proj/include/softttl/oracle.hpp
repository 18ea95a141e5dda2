#pragma once

#include "softttl/instance.hpp"
#include "softttl/solve_result.hpp"

namespace softttl {

enum class PolicyMode { kSoft, kFractional, kTtl };

const char* to_string(PolicyMode m);

struct OracleOptions {
  int grid_steps = 32;
  // Upper limit on the search effort. Joint candidate counts (product over
  // files) are checked up front; the single-file monotone-sequence search
  // is a bounded exact branch-and-bound and counts explored nodes against
  // the same budget.
  long long budget = 10'000'000;
  bool parallel = true;
};

// Exhaustive grid search for the exact optimum of the requested policy
// class under the capacity constraint: soft mode over non-increasing
// sequences on the fraction grid {0, 1/g, ..., 1}, fractional over
// (cutoff, fraction-grid) pairs, TTL over cutoffs. Throws
// std::invalid_argument when the search space exceeds the budget.
// Deterministic regardless of thread count.
SolveResult brute_force_oracle(const Instance& inst, PolicyMode mode,
                               const OracleOptions& opt = OracleOptions{});

}  // namespace softttl
