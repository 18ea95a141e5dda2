#pragma once

#include <vector>

#include "softttl/distribution.hpp"

namespace softttl {

// Per-bin request statistics of a distribution on the grid {0, T, ..., KT}:
//   F[k] = F((k+1)T) - F(kT)                 (probability mass of bin k)
//   A[k] = integral of 1 - F(t) over the bin (expected occupied time)
// with tail entries F[K] = 1 - F(KT) and A[K] = mean - sum of the others,
// so that sum(F) == 1 and sum(A) == mean exactly.
struct DiscretizedModel {
  double T = 0.0;
  int K = 0;
  std::vector<double> F;  // size K+1
  std::vector<double> A;  // size K+1
  double rate = 0.0;

  bool same_grid(const DiscretizedModel& other) const {
    return T == other.T && K == other.K;
  }
};

// Builds the model. Interval integrals use adaptive Gauss-Kronrod
// quadrature with absolute tolerance 1e-10 per bin; failure to converge
// raises NumericalError.
DiscretizedModel discretize(const InterArrivalDistribution& d, double T,
                            int K);

// A[k]/F[k] for each k; bins with F[k] == 0 report +infinity. As T -> 0
// the ratio at index k approaches 1/h(kT), the inverse hazard.
std::vector<double> hazard_ratio_profile(const DiscretizedModel& m);

// Coarse, advisory classification of the arrival process from the shape of
// the hazard-ratio profile.
enum class Regime { kBursty, kMemoryless, kIntermediate };

// Memoryless when the profile is flat to relative eps; bursty when the
// profile rises by more than kBurstyRiseFactor within the first
// kBurstyWindow bins; intermediate otherwise.
inline constexpr double kBurstyRiseFactor = 5.0;
inline constexpr int kBurstyWindow = 5;

Regime classify_regime(const DiscretizedModel& m, double eps);

const char* to_string(Regime r);

}  // namespace softttl
