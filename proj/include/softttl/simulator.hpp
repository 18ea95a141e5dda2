#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "softttl/instance.hpp"
#include "softttl/policy.hpp"

namespace softttl {

// Renewal request trace: arrival times starting at the convention tau(0)=0,
// strictly increasing, all within [0, t_end].
struct Trace {
  std::vector<double> times;
  double t_end = 0.0;

  std::size_t arrivals() const { return times.size() - 1; }  // excludes tau(0)

  // CSV with header "n,tau".
  std::string to_csv() const;
};

// Draws inter-arrival times by inverse-CDF sampling until the horizon is
// passed (the first arrival beyond t_end is discarded). Deterministic for
// a given seed.
Trace generate_trace(const InterArrivalDistribution& d, double t_end,
                     std::uint64_t seed);

// Time-average of per-request rewards w(mu(inter-arrival gap)) over the
// horizon; zero (with no arrivals) for an empty trace.
double empirical_utility(const Policy& p, const Trace& tr,
                         const UtilityFunction& u);

// Time-average cache occupancy: exact integral of the piecewise-constant
// cached fraction along the trace, including the partial interval between
// the last arrival and the horizon, scaled by the file size.
double empirical_occupancy(const Policy& p, const Trace& tr, double size);

struct ReplicationStats {
  double mean = 0.0;
  double std_err = 0.0;
  int n = 0;
};

struct ValidationReport {
  FileEval analytic;
  ReplicationStats utility;
  ReplicationStats occupancy;
  double z_utility = 0.0;
  double z_occupancy = 0.0;
  long long total_arrivals = 0;
  double t_end = 0.0;
  int replications = 0;
};

// Monte-Carlo check of the renewal-reward formulas: runs `replications`
// independent traces (seeds derived from `seed` by a splitmix64 stream) and
// reports empirical means, standard errors, and z-scores against the
// analytic W and C. Replications run in parallel when `parallel` is set;
// the reduction is ordered, so results are identical either way.
ValidationReport validate_lemma1(const FileSpec& file, const Policy& p,
                                 int replications, double t_end,
                                 std::uint64_t seed, bool parallel = true);

}  // namespace softttl
