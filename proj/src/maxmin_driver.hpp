#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace softttl::detail {

// One file's allocation produced by a min-cost query.
template <typename PolicyT>
struct MinCostAlloc {
  double cost = 0.0;
  double achieved = 0.0;  // actual utility, >= the requested target
  std::optional<PolicyT> policy;
};

// Lexicographic max-min over per-file utilities, generic in the policy
// class: `min_cost(i, target)` returns the cheapest allocation of file i
// reaching utility >= target, `caps[i]` is file i's utility ceiling.
//
// Bisects a common level u (each file charged min_cost(i, min(u, cap)));
// files whose cap binds are frozen at their ceiling and the driver recurses
// on the rest with the remaining capacity.
template <typename PolicyT>
std::vector<MinCostAlloc<PolicyT>> lexicographic_maxmin(
    const std::vector<double>& caps, double capacity,
    const std::function<MinCostAlloc<PolicyT>(std::size_t, double)>&
        min_cost) {
  const std::size_t J = caps.size();
  std::vector<MinCostAlloc<PolicyT>> out(J);
  std::vector<std::size_t> active(J);
  for (std::size_t i = 0; i < J; ++i) active[i] = i;
  double remaining = capacity;

  while (!active.empty()) {
    double cap_hi = 0.0;
    for (auto i : active) cap_hi = std::max(cap_hi, caps[i]);

    const auto cost_at = [&](double u) {
      double total = 0.0;
      for (auto i : active) total += min_cost(i, std::min(u, caps[i])).cost;
      return total;
    };

    double level;
    if (cost_at(cap_hi) <= remaining + 1e-12 * capacity) {
      level = cap_hi;
    } else {
      double lo = 0.0, hi = cap_hi;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (cost_at(mid) <= remaining + 1e-12 * capacity ? lo : hi) = mid;
      }
      level = lo;
    }

    std::vector<std::size_t> capped;
    for (auto i : active) {
      if (caps[i] <= level * (1.0 + 1e-9) + 1e-15) capped.push_back(i);
    }
    if (capped.empty()) {
      for (auto i : active) out[i] = min_cost(i, level);
      break;
    }
    for (auto i : capped) {
      out[i] = min_cost(i, caps[i]);
      remaining -= out[i].cost;
      active.erase(std::find(active.begin(), active.end(), i));
    }
  }
  return out;
}

}  // namespace softttl::detail
