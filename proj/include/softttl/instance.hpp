#pragma once

#include <vector>

#include "softttl/discretize.hpp"
#include "softttl/distribution.hpp"
#include "softttl/utility.hpp"

namespace softttl {

// One file of the library: size in bits (normalized units allowed),
// request law, and the utility of serving it partially cached. The request
// rate is the reciprocal mean of the distribution.
struct FileSpec {
  double size = 1.0;
  InterArrivalDistribution dist = InterArrivalDistribution::exponential(1.0);
  UtilityFunction utility = UtilityFunction::power(0.5);

  double rate() const { return dist.rate(); }
};

// Fairness criterion: alpha-fair with alpha >= 0, alpha != 1, or strict
// max-min (the alpha -> infinity limit, kept separate for conditioning).
struct Fairness {
  double alpha = 0.0;
  bool maxmin = false;

  static Fairness alpha_fair(double a);
  static Fairness max_min() { return Fairness{0.0, true}; }
};

// A complete problem: files, shared capacity, fairness, discretization.
struct Instance {
  std::vector<FileSpec> files;
  double capacity = 1.5;
  Fairness fairness;
  double T = 0.03;
  int K = 100;

  // Throws std::invalid_argument on violated invariants.
  void validate() const;

  // Discretized request statistics for each file on the (T, K) grid.
  std::vector<DiscretizedModel> discretize_all() const;
};

}  // namespace softttl
