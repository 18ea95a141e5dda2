#pragma once

#include <string>
#include <vector>

namespace softttl {

// Inter-request time law for one file. Weibull (shape a, scale b) covers
// the exponential case exactly at a = 1; arbitrary laws can be supplied as
// a dense CDF table with linear interpolation.
//
// Invariants: F(0) = 0, F non-decreasing and continuous, F(t) -> 1;
// rate() * mean() == 1.
class InterArrivalDistribution {
 public:
  enum class Kind { kWeibull, kCdfTable };

  // Weibull with given shape and scale. shape > 1 is accepted but flagged
  // (increasing hazard; see warnings()).
  static InterArrivalDistribution weibull(double shape, double scale);

  // Weibull with scale chosen so that the mean inter-arrival time is
  // 1/rate:  b = (rate * Gamma(1 + 1/shape))^-1.
  static InterArrivalDistribution weibull_from_rate(double shape, double rate);

  // Exponential with the given rate (Weibull with shape 1, scale 1/rate).
  static InterArrivalDistribution exponential(double rate);

  // Piecewise-linear CDF through (t[i], F[i]). Requires t[0] == 0,
  // F[0] == 0, t strictly increasing, F non-decreasing reaching 1.
  static InterArrivalDistribution cdf_table(std::vector<double> t,
                                            std::vector<double> F);

  Kind kind() const { return kind_; }
  double shape() const { return shape_; }
  double scale() const { return scale_; }

  double mean() const { return mean_; }
  double rate() const { return 1.0 / mean_; }

  // Pr(X <= t). Throws std::domain_error for t < 0.
  double cdf(double t) const;
  double survival(double t) const { return 1.0 - cdf(t); }

  // F'(t) / (1 - F(t)). For Weibull shape < 1 the hazard diverges at 0,
  // so t must be > 0 there; shape == 1 returns the constant 1/scale.
  double hazard(double t) const;

  // Inverse CDF; u in [0, 1).
  double quantile(double u) const;

  // Deterministic inverse-CDF sample from a uniform variate u in [0, 1).
  double sample(double u) const { return quantile(u); }

  // Non-fatal issues noticed at construction (e.g. shape > 1).
  const std::vector<std::string>& warnings() const { return warnings_; }

  // Table accessors (empty for Weibull).
  const std::vector<double>& table_t() const { return table_t_; }
  const std::vector<double>& table_F() const { return table_F_; }

 private:
  InterArrivalDistribution() = default;

  Kind kind_ = Kind::kWeibull;
  double shape_ = 1.0;
  double scale_ = 1.0;
  double mean_ = 1.0;
  std::vector<double> table_t_;
  std::vector<double> table_F_;
  std::vector<std::string> warnings_;
};

}  // namespace softttl
