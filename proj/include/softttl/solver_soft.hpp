#pragma once

#include <utility>

#include "softttl/instance.hpp"
#include "softttl/solve_result.hpp"

namespace softttl {

// Closed-form optimal policy for a fixed capacity price. q scales the
// occupancy-to-mass ratio: each bin's unconstrained fraction solves
// w'(mu) = q * A[k]/F[k] (clamped to [0, 1] when the right-hand side
// leaves the range of w'), and the monotone cascade
//   mu*[k] = mu*[k-1]        if mu_bar[k] >= mu*[k-1]
//   mu*[k] = mu_bar[k]       if 0 < mu_bar[k] < mu*[k-1]
//   mu*[k] = 0               otherwise
// with mu*[-1] = 1 restores the ordering constraint. Bins with F[k] = 0
// carry no utility and get mu_bar[k] = 0 (1 when q = 0, where caching is
// free).
Policy optimal_policy_for_multiplier(const DiscretizedModel& m,
                                     const UtilityFunction& u, double q);

// Single-file capacity-constrained optimum. Returns the policy and the
// dual multiplier gamma* (w'(mu) = gamma* size A/F at interior bins).
// gamma* = 0 when full caching fits. Bisection on gamma to relative
// capacity tolerance 1e-10; occupancy is non-increasing in gamma, which
// guarantees a valid bracket.
std::pair<Policy, double> solve_single_file(const DiscretizedModel& m,
                                            const UtilityFunction& u,
                                            double capacity, double rate,
                                            double size);

// Cheapest policy achieving long-term utility >= target; returns the
// policy and its occupancy. Throws InfeasibleError when target exceeds
// the full-caching utility rate * w(1).
std::pair<Policy, double> min_cost_for_utility(const DiscretizedModel& m,
                                               const UtilityFunction& u,
                                               double rate, double size,
                                               double target);

// Multi-file solver for the time-varying fractional class: outer bisection
// on a shared capacity price, per-file closed form (alpha = 0) or a damped
// scaling fixed point reusing the closed form (alpha > 0, with a monotone
// scalar-bisection fallback when the fixed point cycles). Dispatches to
// the lexicographic max-min driver when the instance asks for it.
SolveResult solve_soft(const Instance& inst);

// Max stationarity residual |w'(mu[k]) F[k] - q A[k]| over interior bins
// (0 < mu[k] < mu[k-1], mu[k] < 1). Zero at an exact optimum.
double kkt_stationarity_residual(const Policy& p, const DiscretizedModel& m,
                                 const UtilityFunction& u, double q);

}  // namespace softttl
