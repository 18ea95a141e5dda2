#pragma once

#include <vector>

#include "softttl/discretize.hpp"
#include "softttl/policy.hpp"
#include "softttl/utility.hpp"

namespace softttl {

// Long-term utility rate and average cache occupancy of one file.
struct FileEval {
  double W = 0.0;  // utility per second
  double C = 0.0;  // bits
};

// Renewal-reward evaluation of a policy against discretized request
// statistics:
//   W = rate * sum_k w(mu[k]) F[k]
//   C = rate * size * sum_k mu[k] A[k]
// Policy and model must share the same (T, K) grid (ShapeError otherwise).
FileEval evaluate_file(const Policy& p, const DiscretizedModel& m,
                       const UtilityFunction& u, double rate, double size);

// Alpha-fair aggregate (1-alpha)^-1 sum W_i^(1-alpha); exactly the sum for
// alpha = 0. alpha = 1 is unsupported; W_i = 0 with alpha > 1 diverges.
double aggregate_utility(const std::vector<double>& W, double alpha);

// Single term of the aggregate; -infinity for W = 0 with alpha > 1.
double alpha_fair_term(double W, double alpha);

}  // namespace softttl
