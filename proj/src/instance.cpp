#include "softttl/instance.hpp"

#include <cmath>
#include <stdexcept>

namespace softttl {

Fairness Fairness::alpha_fair(double a) {
  if (!(a >= 0.0) || a == 1.0) {
    throw std::invalid_argument(
        "fairness: alpha must be >= 0 and != 1 (use max_min for the "
        "alpha -> infinity limit)");
  }
  return Fairness{a, false};
}

void Instance::validate() const {
  if (files.empty())
    throw std::invalid_argument("instance: needs at least one file");
  if (!(capacity > 0.0))
    throw std::invalid_argument("instance: capacity must be > 0");
  if (!(T > 0.0)) throw std::invalid_argument("instance: T must be > 0");
  if (K < 1) throw std::invalid_argument("instance: K must be >= 1");
  if (!fairness.maxmin && (!(fairness.alpha >= 0.0) || fairness.alpha == 1.0))
    throw std::invalid_argument("instance: alpha must be >= 0 and != 1");
  for (const auto& f : files) {
    if (!(f.size > 0.0))
      throw std::invalid_argument("instance: file sizes must be > 0");
  }
}

std::vector<DiscretizedModel> Instance::discretize_all() const {
  std::vector<DiscretizedModel> out;
  out.reserve(files.size());
  for (const auto& f : files) out.push_back(discretize(f.dist, T, K));
  return out;
}

}  // namespace softttl
