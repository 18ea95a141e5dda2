#include "softttl/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace softttl {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

InterArrivalDistribution InterArrivalDistribution::weibull(double shape,
                                                           double scale) {
  require(std::isfinite(shape) && shape > 0.0, "weibull: shape must be > 0");
  require(std::isfinite(scale) && scale > 0.0, "weibull: scale must be > 0");
  InterArrivalDistribution d;
  d.kind_ = Kind::kWeibull;
  d.shape_ = shape;
  d.scale_ = scale;
  d.mean_ = scale * std::tgamma(1.0 + 1.0 / shape);
  if (shape > 1.0) {
    d.warnings_.push_back(
        "weibull shape > 1 gives an increasing hazard; policies derived "
        "from it fall outside the intended operating regime");
  }
  return d;
}

InterArrivalDistribution InterArrivalDistribution::weibull_from_rate(
    double shape, double rate) {
  require(std::isfinite(shape) && shape > 0.0,
          "weibull_from_rate: shape must be > 0");
  require(std::isfinite(rate) && rate > 0.0,
          "weibull_from_rate: rate must be > 0");
  const double b = 1.0 / (rate * std::tgamma(1.0 + 1.0 / shape));
  return weibull(shape, b);
}

InterArrivalDistribution InterArrivalDistribution::exponential(double rate) {
  require(std::isfinite(rate) && rate > 0.0, "exponential: rate must be > 0");
  return weibull(1.0, 1.0 / rate);
}

InterArrivalDistribution InterArrivalDistribution::cdf_table(
    std::vector<double> t, std::vector<double> F) {
  require(t.size() == F.size(), "cdf_table: t and F must have equal length");
  require(t.size() >= 2, "cdf_table: need at least two points");
  require(t.front() == 0.0, "cdf_table: t must start at 0");
  require(F.front() == 0.0, "cdf_table: F(0) must be 0");
  for (std::size_t i = 1; i < t.size(); ++i) {
    require(t[i] > t[i - 1], "cdf_table: t must be strictly increasing");
    require(F[i] >= F[i - 1], "cdf_table: F must be non-decreasing");
    require(F[i] <= 1.0 + 1e-12, "cdf_table: F must not exceed 1");
  }
  require(std::abs(F.back() - 1.0) <= 1e-9, "cdf_table: F must reach 1");
  F.back() = 1.0;

  InterArrivalDistribution d;
  d.kind_ = Kind::kCdfTable;
  // Mean = integral of the survival function; trapezoid is exact for a
  // piecewise-linear CDF.
  double mean = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    const double s0 = 1.0 - F[i - 1];
    const double s1 = 1.0 - F[i];
    mean += 0.5 * (s0 + s1) * (t[i] - t[i - 1]);
  }
  require(mean > 0.0, "cdf_table: degenerate distribution with zero mean");
  d.mean_ = mean;
  d.table_t_ = std::move(t);
  d.table_F_ = std::move(F);
  return d;
}

double InterArrivalDistribution::cdf(double t) const {
  if (t < 0.0) throw std::domain_error("cdf: t must be >= 0");
  if (kind_ == Kind::kWeibull) {
    if (t == 0.0) return 0.0;
    return -std::expm1(-std::pow(t / scale_, shape_));
  }
  if (t >= table_t_.back()) return 1.0;
  const auto it =
      std::upper_bound(table_t_.begin(), table_t_.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - table_t_.begin());
  const std::size_t lo = hi - 1;
  const double w = (t - table_t_[lo]) / (table_t_[hi] - table_t_[lo]);
  return table_F_[lo] + w * (table_F_[hi] - table_F_[lo]);
}

double InterArrivalDistribution::hazard(double t) const {
  if (kind_ == Kind::kWeibull) {
    if (shape_ == 1.0) return 1.0 / scale_;
    if (t <= 0.0) {
      throw std::domain_error(
          "hazard: diverges at t = 0 for shape != 1; t must be > 0");
    }
    return shape_ / scale_ * std::pow(t / scale_, shape_ - 1.0);
  }
  if (t < 0.0) throw std::domain_error("hazard: t must be >= 0");
  const double s = survival(t);
  if (s <= 0.0) throw std::domain_error("hazard: undefined beyond the support");
  // Density of the interpolant: slope of the segment containing t.
  const auto it = std::upper_bound(table_t_.begin(), table_t_.end(), t);
  std::size_t hi = static_cast<std::size_t>(it - table_t_.begin());
  hi = std::min(hi, table_t_.size() - 1);
  if (hi == 0) hi = 1;
  const std::size_t lo = hi - 1;
  const double slope =
      (table_F_[hi] - table_F_[lo]) / (table_t_[hi] - table_t_[lo]);
  return slope / s;
}

double InterArrivalDistribution::quantile(double u) const {
  if (!(u >= 0.0 && u < 1.0))
    throw std::domain_error("quantile: u must lie in [0, 1)");
  if (kind_ == Kind::kWeibull) {
    if (u == 0.0) return 0.0;
    return scale_ * std::pow(-std::log1p(-u), 1.0 / shape_);
  }
  const auto it = std::lower_bound(table_F_.begin(), table_F_.end(), u);
  std::size_t hi = static_cast<std::size_t>(it - table_F_.begin());
  if (hi == 0) return 0.0;
  // Skip flat segments so that interpolation is well defined.
  std::size_t lo = hi - 1;
  while (lo > 0 && table_F_[lo] == table_F_[hi]) --lo;
  const double dF = table_F_[hi] - table_F_[lo];
  if (dF <= 0.0) return table_t_[hi];
  const double w = (u - table_F_[lo]) / dF;
  return table_t_[lo] + w * (table_t_[hi] - table_t_[lo]);
}

}  // namespace softttl
