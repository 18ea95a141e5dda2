// Test-only reference implementations, kept independent of the library's
// numerical paths: a hand-rolled adaptive Simpson integrator, a
// projected-gradient solver for the single-file problem, an
// active-set-enumeration solver for the isotonic projection QP, and a
// Kolmogorov-Smirnov statistic.
#pragma once

#include <functional>
#include <vector>

#include "softttl/discretize.hpp"
#include "softttl/policy.hpp"
#include "softttl/utility.hpp"

namespace testsupport {

// Adaptive Simpson quadrature to absolute tolerance `tol`.
double simpson(const std::function<double(double)>& f, double a, double b,
               double tol, int max_depth = 60);

// Gamma(1 + 1/a) computed as the mean of a unit-scale Weibull: the
// integral of exp(-t^a) over [0, inf), truncated where the integrand
// drops below 1e-16.
double weibull_unit_mean(double a);

// Single-file capacity-constrained optimum by projected gradient with
// isotonic projection on the inner Lagrangian and bisection on the
// multiplier; independent of the closed-form cascade it checks.
std::vector<double> pg_single_file(const softttl::DiscretizedModel& m,
                                   const softttl::UtilityFunction& u,
                                   double capacity, double rate, double size);

// Exact Euclidean projection onto {1 >= x0 >= ... >= x_{n-1} >= 0} by
// enumerating active sets (equality patterns + pinned blocks); exponential
// in n, fine for n <= 10.
std::vector<double> isotonic_qp_oracle(const std::vector<double>& v);

// Two-sided Kolmogorov-Smirnov statistic of samples against a CDF.
double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf);

}  // namespace testsupport
