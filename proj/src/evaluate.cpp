#include "softttl/evaluate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "softttl/errors.hpp"

namespace softttl {

FileEval evaluate_file(const Policy& p, const DiscretizedModel& m,
                       const UtilityFunction& u, double rate, double size) {
  if (p.K() != m.K || p.T() != m.T) {
    throw ShapeError("evaluate_file: policy and model use different grids");
  }
  const auto& mu = p.fractions();
  double W = 0.0;
  double C = 0.0;
  for (int k = 0; k <= m.K; ++k) {
    const auto i = static_cast<std::size_t>(k);
    if (mu[i] > 0.0) W += u.value(mu[i]) * m.F[i];
    C += mu[i] * m.A[i];
  }
  return FileEval{rate * W, rate * size * C};
}

double alpha_fair_term(double W, double alpha) {
  if (alpha == 0.0) return W;
  if (W <= 0.0) {
    if (alpha > 1.0) return -std::numeric_limits<double>::infinity();
    return 0.0;
  }
  return std::pow(W, 1.0 - alpha) / (1.0 - alpha);
}

double aggregate_utility(const std::vector<double>& W, double alpha) {
  if (alpha == 1.0) {
    throw std::invalid_argument(
        "aggregate_utility: alpha = 1 (proportional fairness) unsupported");
  }
  if (alpha == 0.0) {
    double sum = 0.0;
    for (double w : W) sum += w;
    return sum;
  }
  double sum = 0.0;
  for (double w : W) {
    if (w <= 0.0 && alpha > 1.0) {
      throw std::invalid_argument(
          "aggregate_utility: W_i = 0 with alpha > 1 diverges");
    }
    sum += alpha_fair_term(w, alpha);
  }
  return sum;
}

}  // namespace softttl
