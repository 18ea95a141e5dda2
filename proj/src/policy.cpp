#include "softttl/policy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace softttl {

namespace {
constexpr double kSnapTol = 1e-12;
}

Policy::Policy(std::vector<double> mu, double T) : mu_(std::move(mu)), T_(T) {
  if (!(T_ > 0.0)) throw std::invalid_argument("Policy: T must be > 0");
  if (mu_.empty()) throw std::invalid_argument("Policy: needs at least one bin");
  double prev = 1.0;
  for (std::size_t k = 0; k < mu_.size(); ++k) {
    double v = mu_[k];
    if (!(v >= -kSnapTol) || !(v <= prev + kSnapTol)) {
      throw std::invalid_argument(
          "Policy: fractions must satisfy 1 >= mu[0] >= ... >= mu[K] >= 0");
    }
    v = std::clamp(v, 0.0, prev);
    mu_[k] = v;
    prev = v;
  }
  prefix_.resize(mu_.size() + 1);
  prefix_[0] = 0.0;
  for (std::size_t k = 0; k < mu_.size(); ++k)
    prefix_[k + 1] = prefix_[k] + mu_[k] * T_;
}

double Policy::at(double t) const {
  if (t < 0.0) throw std::domain_error("Policy::at: t must be >= 0");
  const auto k = static_cast<std::size_t>(t / T_);
  return mu_[std::min(k, mu_.size() - 1)];
}

double Policy::integral(double x) const {
  if (x <= 0.0) return 0.0;
  const std::size_t K = mu_.size() - 1;
  const double kx = x / T_;
  if (kx >= static_cast<double>(K)) {
    return prefix_[K] + (x - static_cast<double>(K) * T_) * mu_[K];
  }
  const auto k = static_cast<std::size_t>(kx);
  return prefix_[k] + (x - static_cast<double>(k) * T_) * mu_[k];
}

std::string Policy::to_csv() const {
  std::string out = "k,t_start,mu\n";
  char buf[80];
  for (std::size_t k = 0; k < mu_.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g\n", k,
                  static_cast<double>(k) * T_, mu_[k]);
    out += buf;
  }
  return out;
}

Policy make_fractional(double nu, int cutoff, int K, double T) {
  if (!(nu >= 0.0 && nu <= 1.0))
    throw std::invalid_argument("make_fractional: nu must lie in [0, 1]");
  if (cutoff < -1 || cutoff > K)
    throw std::invalid_argument("make_fractional: cutoff must lie in [-1, K]");
  std::vector<double> mu(static_cast<std::size_t>(K) + 1, 0.0);
  for (int k = 0; k <= cutoff; ++k) mu[static_cast<std::size_t>(k)] = nu;
  return Policy(std::move(mu), T);
}

Policy make_ttl(int cutoff, int K, double T) {
  return make_fractional(1.0, cutoff, K, T);
}

}  // namespace softttl
