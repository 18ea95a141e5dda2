#pragma once

#include "softttl/instance.hpp"
#include "softttl/solve_result.hpp"

namespace softttl {

// Per-file decision in the cutoff-restricted classes: cache fraction
// `fraction` through bin `cutoff` (inclusive), nothing afterwards.
// cutoff = -1 encodes the empty policy; fraction is pinned to 1 in TTL
// mode.
struct ConstrainedChoice {
  int cutoff = -1;
  double fraction = 0.0;
};

// Optimizes the fractional-TTL class (constant fraction, per-file cutoff).
// Method: outer bisection on a shared capacity price; the per-file inner
// problem enumerates the cutoff and solves the fraction in closed form
// (alpha = 0) or by monotone scalar bisection on the stationarity
// condition (alpha > 0). Because cutoffs are discrete the dual may leave a
// gap, so the feasible dual solution is improved by a greedy repair pass
// and then by a bounded exact branch-and-bound over cutoff tuples (fraction
// water-filling at the leaves); the remaining bound gap is reported in
// diagnostics. Max-min instances use the lexicographic driver instead.
SolveResult solve_fractional(const Instance& inst);

// Same machinery with the fraction pinned to 1 (classic TTL: the per-file
// choice is the cutoff alone, enumerated exactly).
SolveResult solve_ttl(const Instance& inst);

}  // namespace softttl
