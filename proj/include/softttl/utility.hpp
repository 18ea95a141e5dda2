#pragma once

#include <functional>
#include <string>

namespace softttl {

// Strictly concave, strictly increasing utility of the cached fraction,
// w : [0,1] -> [0, inf), differentiable on (0,1]. Built-in power family
// w(mu) = mu^p with 0 < p < 1 (w(0) = 0); arbitrary utilities can be
// supplied as a (w, w', inverse-of-w') triple.
class UtilityFunction {
 public:
  static UtilityFunction power(double exponent);

  // deriv_at_zero may be +infinity (e.g. the power family). The inverse of
  // w' must satisfy deriv(deriv_inv(y)) == y on [deriv_at_one,
  // deriv_at_zero) to 1e-10 relative.
  static UtilityFunction custom(std::function<double(double)> value,
                                std::function<double(double)> deriv,
                                std::function<double(double)> deriv_inv,
                                double deriv_at_one, double deriv_at_zero,
                                std::string name = "custom");

  double value(double mu) const { return value_(mu); }
  double deriv(double mu) const { return deriv_(mu); }

  // Marginal-utility threshold solve with out-of-range clamping: the mu in
  // [0, 1] where w'(mu) = y, 1 when y is below the range of w', 0 when it
  // is above.
  double fraction_for_marginal(double y) const;

  // w^{-1}(y) on [0, w(1)]; closed form for the power family, bisection
  // otherwise.
  double inverse_value(double y) const;

  double deriv_at_one() const { return deriv_at_one_; }
  double deriv_at_zero() const { return deriv_at_zero_; }
  double value_at_one() const { return value_(1.0); }

  bool is_power() const { return exponent_ > 0.0; }
  double exponent() const { return exponent_; }
  const std::string& name() const { return name_; }

 private:
  UtilityFunction() = default;

  std::function<double(double)> value_;
  std::function<double(double)> deriv_;
  std::function<double(double)> deriv_inv_;
  double deriv_at_one_ = 0.0;
  double deriv_at_zero_ = 0.0;
  double exponent_ = -1.0;  // > 0 only for the power family
  std::string name_;
};

}  // namespace softttl
