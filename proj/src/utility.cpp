#include "softttl/utility.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace softttl {

UtilityFunction UtilityFunction::power(double exponent) {
  if (!(exponent > 0.0 && exponent < 1.0)) {
    throw std::invalid_argument(
        "power utility: exponent must lie in (0, 1) for strict concavity");
  }
  UtilityFunction u;
  const double p = exponent;
  u.value_ = [p](double mu) { return std::pow(mu, p); };
  u.deriv_ = [p](double mu) { return p * std::pow(mu, p - 1.0); };
  // w'(mu) = p mu^{p-1}  =>  mu = (y/p)^{1/(p-1)}
  u.deriv_inv_ = [p](double y) { return std::pow(y / p, 1.0 / (p - 1.0)); };
  u.deriv_at_one_ = p;
  u.deriv_at_zero_ = std::numeric_limits<double>::infinity();
  u.exponent_ = p;
  u.name_ = "power(" + std::to_string(p) + ")";
  return u;
}

UtilityFunction UtilityFunction::custom(
    std::function<double(double)> value, std::function<double(double)> deriv,
    std::function<double(double)> deriv_inv, double deriv_at_one,
    double deriv_at_zero, std::string name) {
  if (!(deriv_at_one >= 0.0) || !(deriv_at_zero > deriv_at_one)) {
    throw std::invalid_argument(
        "custom utility: need 0 <= w'(1) < w'(0+) (strictly decreasing w')");
  }
  UtilityFunction u;
  u.value_ = std::move(value);
  u.deriv_ = std::move(deriv);
  u.deriv_inv_ = std::move(deriv_inv);
  u.deriv_at_one_ = deriv_at_one;
  u.deriv_at_zero_ = deriv_at_zero;
  u.name_ = std::move(name);
  return u;
}

double UtilityFunction::fraction_for_marginal(double y) const {
  if (y <= deriv_at_one_) return 1.0;
  if (y >= deriv_at_zero_) return 0.0;
  const double mu = deriv_inv_(y);
  if (mu <= 0.0) return 0.0;
  if (mu >= 1.0) return 1.0;
  return mu;
}

double UtilityFunction::inverse_value(double y) const {
  if (y <= 0.0) return 0.0;
  const double w1 = value_(1.0);
  if (y >= w1) return 1.0;
  if (exponent_ > 0.0) return std::pow(y, 1.0 / exponent_);
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (value_(mid) < y ? lo : hi) = mid;
    if (hi - lo <= 1e-15) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace softttl
