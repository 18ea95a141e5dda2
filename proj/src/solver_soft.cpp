#include "softttl/solver_soft.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxmin_driver.hpp"
#include "softttl/errors.hpp"

namespace softttl {

namespace {

constexpr double kSingleFileCapacityRelTol = 1e-10;
constexpr double kMultiFileCapacityRelTol = 1e-8;
constexpr double kFixedPointTol = 1e-10;
constexpr int kFixedPointMaxIter = 500;
constexpr int kMaxBisectionIter = 300;
constexpr int kMaxDoublings = 60;

double occupancy_of(const Policy& p, const DiscretizedModel& m, double rate,
                    double size) {
  const auto& mu = p.fractions();
  double c = 0.0;
  for (std::size_t k = 0; k < mu.size(); ++k) c += mu[k] * m.A[k];
  return rate * size * c;
}

double utility_of(const Policy& p, const DiscretizedModel& m,
                  const UtilityFunction& u, double rate) {
  const auto& mu = p.fractions();
  double w = 0.0;
  for (std::size_t k = 0; k < mu.size(); ++k) {
    if (mu[k] > 0.0) w += u.value(mu[k]) * m.F[k];
  }
  return rate * w;
}

// Per-file best response to a shared capacity price. For alpha > 0 the
// stationarity system matches the single-file closed form with the
// multiplier rescaled by the inverse marginal of the aggregate term,
// beta = W^-alpha. The damped fixed point iterates that scaling; when it
// fails to settle, the self-consistency equation
//   psi(q) = q - gamma * size * W(q)^alpha = 0
// is solved by bisection (psi is strictly increasing because W(q) is
// non-increasing), which cannot cycle.
struct BestResponse {
  Policy policy;
  double W;
  double C;
  bool used_fallback;
};

BestResponse soft_best_response(const DiscretizedModel& m,
                                const UtilityFunction& u, double gamma,
                                double alpha, double rate, double size,
                                double warm_W) {
  const auto finish = [&](Policy&& p, bool fb) {
    const double W = utility_of(p, m, u, rate);
    const double C = occupancy_of(p, m, rate, size);
    return BestResponse{std::move(p), W, C, fb};
  };

  if (gamma == 0.0 || alpha == 0.0) {
    return finish(optimal_policy_for_multiplier(m, u, gamma * size), false);
  }

  const double cap = rate * u.value_at_one();
  double W = std::clamp(warm_W, 1e-12 * cap, cap);
  for (int it = 0; it < kFixedPointMaxIter; ++it) {
    const double q = gamma * size * std::exp(alpha * std::log(W));
    Policy p = optimal_policy_for_multiplier(m, u, q);
    double Wn = utility_of(p, m, u, rate);
    if (Wn <= 0.0) Wn = std::numeric_limits<double>::min();
    if (std::abs(Wn - W) <= kFixedPointTol * std::max(1.0, W)) {
      return finish(std::move(p), false);
    }
    W = 0.5 * (W + Wn);
  }

  // Fallback: monotone bisection on q.
  const auto psi = [&](double q) {
    Policy p = optimal_policy_for_multiplier(m, u, q);
    const double Wq =
        std::max(utility_of(p, m, u, rate), std::numeric_limits<double>::min());
    return q - gamma * size * std::exp(alpha * std::log(Wq));
  };
  double lo = 0.0, hi = 1.0;
  int d = 0;
  while (psi(hi) < 0.0 && d++ < 200) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (psi(mid) < 0.0 ? lo : hi) = mid;
  }
  return finish(optimal_policy_for_multiplier(m, u, 0.5 * (lo + hi)), true);
}

}  // namespace

Policy optimal_policy_for_multiplier(const DiscretizedModel& m,
                                     const UtilityFunction& u, double q) {
  if (!(q >= 0.0)) {
    throw std::invalid_argument(
        "optimal_policy_for_multiplier: multiplier must be >= 0");
  }
  std::vector<double> mu(m.F.size());
  double prev = 1.0;
  for (std::size_t k = 0; k < m.F.size(); ++k) {
    double bar;
    if (m.F[k] <= 0.0) {
      bar = (q == 0.0) ? 1.0 : 0.0;
    } else {
      bar = u.fraction_for_marginal(q * m.A[k] / m.F[k]);
    }
    double v;
    if (bar >= prev) {
      v = prev;
    } else if (bar > 0.0) {
      v = bar;
    } else {
      v = 0.0;
    }
    mu[k] = v;
    prev = v;
  }
  return Policy(std::move(mu), m.T);
}

std::pair<Policy, double> solve_single_file(const DiscretizedModel& m,
                                            const UtilityFunction& u,
                                            double capacity, double rate,
                                            double size) {
  if (!(capacity > 0.0)) {
    throw std::invalid_argument("solve_single_file: capacity must be > 0");
  }
  Policy ones = optimal_policy_for_multiplier(m, u, 0.0);
  if (occupancy_of(ones, m, rate, size) <= capacity) {
    return {std::move(ones), 0.0};
  }

  const auto usage = [&](double gamma) {
    return occupancy_of(optimal_policy_for_multiplier(m, u, gamma * size), m,
                        rate, size);
  };
  double hi = 1.0;
  int d = 0;
  while (usage(hi) >= capacity) {
    hi *= 2.0;
    if (++d > kMaxDoublings) {
      throw NumericalError("solve_single_file: could not bracket gamma");
    }
  }
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double use = usage(mid);
    if (std::abs(use - capacity) <= kSingleFileCapacityRelTol * capacity) {
      return {optimal_policy_for_multiplier(m, u, mid * size), mid};
    }
    (use > capacity ? lo : hi) = mid;
  }
  throw NumericalError(
      "solve_single_file: bisection did not reach the capacity tolerance "
      "within 200 steps");
}

std::pair<Policy, double> min_cost_for_utility(const DiscretizedModel& m,
                                               const UtilityFunction& u,
                                               double rate, double size,
                                               double target) {
  const double cap = rate * u.value_at_one();
  if (target > cap * (1.0 + 1e-12)) {
    throw InfeasibleError(
        "min_cost_for_utility: target exceeds the full-caching utility " +
        std::to_string(cap));
  }
  if (target <= 0.0) {
    Policy empty(std::vector<double>(m.F.size(), 0.0), m.T);
    return {std::move(empty), 0.0};
  }
  if (target >= cap * (1.0 - 1e-12)) {
    Policy ones = optimal_policy_for_multiplier(m, u, 0.0);
    const double c = occupancy_of(ones, m, rate, size);
    return {std::move(ones), c};
  }

  // Utility along the closed-form path is continuous and non-increasing in
  // the multiplier; keep the feasible (lo) side of the bracket.
  const auto util = [&](double q) {
    return utility_of(optimal_policy_for_multiplier(m, u, q), m, u, rate);
  };
  double lo = 0.0, hi = 1.0;
  int d = 0;
  while (util(hi) > target) {
    hi *= 2.0;
    if (++d > kMaxDoublings) {
      throw NumericalError("min_cost_for_utility: could not bracket");
    }
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (util(mid) >= target ? lo : hi) = mid;
    if (util(lo) - target <= 1e-12 * std::max(1.0, target)) break;
  }
  Policy p = optimal_policy_for_multiplier(m, u, lo);
  const double c = occupancy_of(p, m, rate, size);
  return {std::move(p), c};
}

double kkt_stationarity_residual(const Policy& p, const DiscretizedModel& m,
                                 const UtilityFunction& u, double q) {
  const auto& mu = p.fractions();
  double worst = 0.0;
  double prev = 1.0;
  for (std::size_t k = 0; k < mu.size(); ++k) {
    const bool interior = mu[k] > 1e-9 && mu[k] < prev - 1e-9 && mu[k] < 1.0 - 1e-9;
    if (interior) {
      worst = std::max(worst,
                       std::abs(u.deriv(mu[k]) * m.F[k] - q * m.A[k]));
    }
    prev = mu[k];
  }
  return worst;
}

namespace {

SolveResult solve_soft_maxmin(const Instance& inst,
                              const std::vector<DiscretizedModel>& models) {
  const std::size_t J = inst.files.size();
  std::vector<double> caps(J);
  for (std::size_t i = 0; i < J; ++i) {
    caps[i] = inst.files[i].rate() * inst.files[i].utility.value_at_one();
  }
  const std::function<detail::MinCostAlloc<Policy>(std::size_t, double)> mc =
      [&](std::size_t i, double target) {
        auto [p, cost] = min_cost_for_utility(models[i], inst.files[i].utility,
                                              inst.files[i].rate(),
                                              inst.files[i].size, target);
        const double achieved =
            utility_of(p, models[i], inst.files[i].utility,
                       inst.files[i].rate());
        return detail::MinCostAlloc<Policy>{cost, achieved, std::move(p)};
      };
  auto alloc = detail::lexicographic_maxmin<Policy>(caps, inst.capacity, mc);

  SolveResult res;
  res.gamma = std::numeric_limits<double>::quiet_NaN();
  res.aggregate = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < J; ++i) {
    res.per_file.push_back(
        evaluate_file(*alloc[i].policy, models[i], inst.files[i].utility,
                      inst.files[i].rate(), inst.files[i].size));
    res.aggregate = std::min(res.aggregate, res.per_file.back().W);
    res.policies.push_back(std::move(*alloc[i].policy));
  }
  res.diag.capacity_residual = res.total_occupancy() - inst.capacity;
  res.diag.method = "soft/lexicographic-maxmin";
  return res;
}

}  // namespace

SolveResult solve_soft(const Instance& inst) {
  inst.validate();
  const auto models = inst.discretize_all();
  if (inst.fairness.maxmin) return solve_soft_maxmin(inst, models);

  const double alpha = inst.fairness.alpha;
  const std::size_t J = inst.files.size();

  std::vector<double> warm(J);
  for (std::size_t i = 0; i < J; ++i) {
    warm[i] = inst.files[i].rate() * inst.files[i].utility.value_at_one();
  }

  int fallbacks = 0;
  std::vector<BestResponse> responses;
  const auto respond = [&](double gamma) {
    std::vector<BestResponse> out;
    out.reserve(J);
    for (std::size_t i = 0; i < J; ++i) {
      out.push_back(soft_best_response(models[i], inst.files[i].utility, gamma,
                                       alpha, inst.files[i].rate(),
                                       inst.files[i].size, warm[i]));
      if (out.back().used_fallback) ++fallbacks;
      warm[i] = out.back().W;
    }
    return out;
  };
  const auto usage_of = [](const std::vector<BestResponse>& rs) {
    double c = 0.0;
    for (const auto& r : rs) c += r.C;
    return c;
  };

  int iterations = 0;
  double gamma_star = 0.0;
  responses = respond(0.0);
  if (usage_of(responses) > inst.capacity) {
    double hi = 1.0;
    int d = 0;
    while (usage_of(respond(hi)) >= inst.capacity) {
      hi *= 2.0;
      if (++d > kMaxDoublings) {
        throw NumericalError("solve_soft: could not bracket gamma");
      }
    }
    double lo = 0.0;
    bool converged = false;
    for (; iterations < kMaxBisectionIter; ++iterations) {
      const double mid = 0.5 * (lo + hi);
      responses = respond(mid);
      const double use = usage_of(responses);
      if (std::abs(use - inst.capacity) <=
          kMultiFileCapacityRelTol * inst.capacity) {
        gamma_star = mid;
        converged = true;
        break;
      }
      (use > inst.capacity ? lo : hi) = mid;
    }
    if (!converged) {
      // Capacity usage is continuous in gamma, so a collapsed bracket
      // means floating-point exhaustion; keep the feasible side.
      responses = respond(hi);
      gamma_star = hi;
      if (std::abs(usage_of(responses) - inst.capacity) >
          1e-6 * inst.capacity) {
        throw NumericalError(
            "solve_soft: dual bisection failed to meet the capacity "
            "tolerance");
      }
    }
  }

  SolveResult res;
  res.gamma = gamma_star;
  std::vector<double> Ws;
  for (std::size_t i = 0; i < J; ++i) {
    res.per_file.push_back(FileEval{responses[i].W, responses[i].C});
    Ws.push_back(responses[i].W);
    const double q_eff =
        alpha == 0.0
            ? gamma_star * inst.files[i].size
            : gamma_star * inst.files[i].size *
                  std::exp(alpha * std::log(std::max(
                                       responses[i].W,
                                       std::numeric_limits<double>::min())));
    res.diag.kkt_residual =
        std::max(res.diag.kkt_residual,
                 kkt_stationarity_residual(responses[i].policy, models[i],
                                           inst.files[i].utility, q_eff));
    res.policies.push_back(std::move(responses[i].policy));
  }
  res.aggregate = aggregate_utility(Ws, alpha);
  res.diag.outer_iterations = iterations;
  res.diag.capacity_residual = res.total_occupancy() - inst.capacity;
  res.diag.inner_fallbacks = fallbacks;
  res.diag.method = "soft/dual-bisection";
  return res;
}

}  // namespace softttl
