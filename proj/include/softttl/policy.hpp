#pragma once

#include <string>
#include <vector>

namespace softttl {

// Non-increasing cached-fraction step function on the grid {0, T, ..., KT}:
// fraction mu[k] is held on [kT, (k+1)T) for k < K and mu[K] from KT on.
//
// Construction enforces 1 >= mu[0] >= ... >= mu[K] >= 0. Violations up to
// 1e-12 (floating-point noise from solvers) are snapped; anything larger
// is an error.
class Policy {
 public:
  Policy(std::vector<double> mu, double T);

  double at(double t) const;

  int K() const { return static_cast<int>(mu_.size()) - 1; }
  double T() const { return T_; }
  const std::vector<double>& fractions() const { return mu_; }

  // Integral of the step function over [0, x] (x >= 0); the tail beyond KT
  // contributes mu[K] per unit time. Used by occupancy computations.
  double integral(double x) const;

  // CSV with header "k,t_start,mu", one row per bin, full precision.
  std::string to_csv() const;

 private:
  std::vector<double> mu_;
  double T_;
  std::vector<double> prefix_;  // prefix_[j] = sum_{m<j} mu[m] * T
};

// Constant fraction nu held through bin `cutoff` (inclusive), zero after.
// cutoff = -1 encodes the empty policy.
Policy make_fractional(double nu, int cutoff, int K, double T);

// Full caching through bin `cutoff`: make_fractional with nu = 1.
Policy make_ttl(int cutoff, int K, double T);

}  // namespace softttl
