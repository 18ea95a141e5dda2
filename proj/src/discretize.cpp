#include "softttl/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "softttl/errors.hpp"

namespace softttl {

namespace {

constexpr double kBinAbsTol = 1e-10;

// Integral of the survival function over [lo, hi]. The integrand is smooth
// except for an endpoint singularity in its derivatives at t = 0 when the
// Weibull shape is < 1; a generous split depth resolves that boundary layer.
double survival_integral(const InterArrivalDistribution& d, double lo,
                         double hi) {
  if (d.kind() == InterArrivalDistribution::Kind::kCdfTable) {
    // Piecewise-linear survival: trapezoid over segment pieces is exact.
    const auto& ts = d.table_t();
    double total = 0.0;
    double a = lo;
    while (a < hi) {
      auto it = std::upper_bound(ts.begin(), ts.end(), a);
      double seg_end = (it == ts.end()) ? hi : std::min(*it, hi);
      if (seg_end <= a) seg_end = hi;
      total += 0.5 * (d.survival(a) + d.survival(seg_end)) * (seg_end - a);
      a = seg_end;
    }
    return total;
  }
  double error = 0.0;
  const double val =
      boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
          [&d](double t) { return d.survival(t); }, lo, hi, 40, 1e-13,
          &error);
  if (!(error <= kBinAbsTol)) {
    throw NumericalError(
        "discretize: quadrature did not reach absolute tolerance 1e-10 on [" +
        std::to_string(lo) + ", " + std::to_string(hi) +
        "]; error estimate " + std::to_string(error));
  }
  return val;
}

}  // namespace

DiscretizedModel discretize(const InterArrivalDistribution& d, double T,
                            int K) {
  if (!(T > 0.0)) throw std::invalid_argument("discretize: T must be > 0");
  if (K < 1) throw std::invalid_argument("discretize: K must be >= 1");

  DiscretizedModel m;
  m.T = T;
  m.K = K;
  m.rate = d.rate();
  m.F.resize(K + 1);
  m.A.resize(K + 1);

  double mass_below = 0.0;  // F(kT)
  double tail_area = d.mean();
  for (int k = 0; k < K; ++k) {
    const double mass_next = d.cdf((k + 1) * T);
    m.F[k] = std::max(0.0, mass_next - mass_below);
    mass_below = mass_next;
    m.A[k] = survival_integral(d, k * T, (k + 1) * T);
    tail_area -= m.A[k];
  }
  m.F[K] = std::max(0.0, 1.0 - mass_below);
  // Tail area via the mean identity: exact and avoids an improper integral.
  m.A[K] = std::max(0.0, tail_area);
  return m;
}

std::vector<double> hazard_ratio_profile(const DiscretizedModel& m) {
  std::vector<double> r(m.F.size());
  for (std::size_t k = 0; k < m.F.size(); ++k) {
    r[k] = m.F[k] > 0.0 ? m.A[k] / m.F[k]
                        : std::numeric_limits<double>::infinity();
  }
  return r;
}

Regime classify_regime(const DiscretizedModel& m, double eps) {
  const auto r = hazard_ratio_profile(m);
  double rmin = std::numeric_limits<double>::infinity();
  double rmax = 0.0;
  for (double v : r) {
    if (std::isinf(v)) continue;
    rmin = std::min(rmin, v);
    rmax = std::max(rmax, v);
  }
  if (rmin > 0.0 && (rmax - rmin) / rmin < eps) return Regime::kMemoryless;
  const std::size_t probe = std::min<std::size_t>(kBurstyWindow, m.K);
  if (r[0] > 0.0 && std::isfinite(r[probe]) &&
      r[probe] / r[0] >= kBurstyRiseFactor) {
    return Regime::kBursty;
  }
  return Regime::kIntermediate;
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::kBursty: return "bursty";
    case Regime::kMemoryless: return "memoryless";
    case Regime::kIntermediate: return "intermediate";
  }
  return "unknown";
}

}  // namespace softttl
