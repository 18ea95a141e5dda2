#include "softttl/solver_constrained.hpp"

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

constexpr int kMaxDoublings = 60;
constexpr int kOuterBisectionIter = 100;
constexpr long long kPolishNodeBudget = 4'000'000;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Prefix sums over cutoffs: SF[L] = sum_{k<=L} F[k], SA[L] likewise.
struct FileTable {
  std::vector<double> SF, SA;
  double rate = 0.0;
  double size = 0.0;
  const UtilityFunction* util = nullptr;

  double cap() const { return rate * util->value_at_one(); }
  double W_of(int L, double nu) const {
    if (L < 0 || nu <= 0.0) return 0.0;
    return rate * util->value(nu) * SF[static_cast<std::size_t>(L)];
  }
  double C_of(int L, double nu) const {
    if (L < 0) return 0.0;
    return rate * size * nu * SA[static_cast<std::size_t>(L)];
  }
};

FileTable make_table(const DiscretizedModel& m, const FileSpec& f) {
  FileTable t;
  t.rate = f.rate();
  t.size = f.size;
  t.util = &f.utility;
  t.SF.resize(m.F.size());
  t.SA.resize(m.A.size());
  double sf = 0.0, sa = 0.0;
  for (std::size_t k = 0; k < m.F.size(); ++k) {
    sf += m.F[k];
    sa += m.A[k];
    t.SF[k] = sf;
    t.SA[k] = sa;
  }
  return t;
}

struct Choice {
  int L = -1;
  double nu = 0.0;
  double W = 0.0;
  double C = 0.0;
  double score = 0.0;  // g(W) - gamma * C
};

// Optimal fraction for a fixed cutoff at price `price`. For alpha > 0 the
// first-order condition  W^-alpha * rate * w'(nu) * SF = price * rate *
// size * SA  has a strictly decreasing left-hand side in nu, so a sign
// bisection is exact; the comparison runs in logs to survive tiny nu.
double best_fraction(const FileTable& t, int L, double price, double alpha) {
  const double sf = t.SF[static_cast<std::size_t>(L)];
  const double sa = t.SA[static_cast<std::size_t>(L)];
  if (price <= 0.0) return 1.0;
  if (alpha == 0.0) {
    return t.util->fraction_for_marginal(price * t.size * sa / sf);
  }
  // ascending(nu) is the sign of d/dnu [g(W(nu)) - price * C(nu)] with
  //   d/dnu = W^-alpha * rate * w'(nu) * SF - price * rate * size * SA.
  const double log_rhs = std::log(price * t.size * sa) - std::log(sf);
  const auto ascending = [&](double nu) {
    const double W = t.rate * t.util->value(nu) * sf;
    return -alpha * std::log(W) + std::log(t.util->deriv(nu)) > log_rhs;
  };
  if (ascending(1.0)) return 1.0;
  double lo = 1e-300, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = std::sqrt(lo * hi);  // geometric: nu spans decades
    (ascending(mid) ? lo : hi) = mid;
  }
  return std::sqrt(lo * hi);
}

bool better(const Choice& a, const Choice& b) {
  const double eps = 1e-12 * (1.0 + std::abs(b.score));
  if (a.score > b.score + eps) return true;
  if (a.score < b.score - eps) return false;
  return a.C < b.C;  // ties broken toward lower occupancy
}

// Best (cutoff, fraction) for one file at the given price. `scores_out`,
// when non-null, receives the per-cutoff optimal Lagrangian scores
// (index 0 <-> cutoff -1), used later as branch-and-bound bounds.
Choice best_choice(const FileTable& t, double gamma, double alpha,
                   bool fractional, std::vector<double>* scores_out) {
  const int K = static_cast<int>(t.SF.size()) - 1;
  if (scores_out) scores_out->assign(static_cast<std::size_t>(K) + 2, -kInf);

  Choice best{-1, 0.0, 0.0, 0.0, alpha_fair_term(0.0, alpha)};
  if (scores_out) (*scores_out)[0] = best.score;

  for (int L = 0; L <= K; ++L) {
    if (t.SF[static_cast<std::size_t>(L)] <= 0.0) continue;
    const double nu =
        fractional ? best_fraction(t, L, gamma, alpha) : 1.0;
    if (nu <= 0.0) continue;
    Choice c;
    c.L = L;
    c.nu = nu;
    c.W = t.W_of(L, nu);
    c.C = t.C_of(L, nu);
    c.score = alpha_fair_term(c.W, alpha) - gamma * c.C;
    if (scores_out) (*scores_out)[static_cast<std::size_t>(L) + 1] = c.score;
    if (better(c, best)) best = c;
  }
  return best;
}

double total_cost(const std::vector<Choice>& cs) {
  double c = 0.0;
  for (const auto& x : cs) c += x.C;
  return c;
}

double total_objective(const std::vector<Choice>& cs, double alpha) {
  double g = 0.0;
  for (const auto& x : cs) g += alpha_fair_term(x.W, alpha);
  return g;
}

// Greedy feasibility-preserving improvement: repeatedly hand the current
// slack to the single file whose best slack-constrained upgrade gains the
// most objective.
void greedy_repair(std::vector<Choice>& cs, const std::vector<FileTable>& ts,
                   double capacity, double alpha, bool fractional) {
  const int K = static_cast<int>(ts[0].SF.size()) - 1;
  for (int round = 0; round < 1000; ++round) {
    const double slack = capacity - total_cost(cs);
    double best_gain = 1e-12;
    std::size_t best_i = 0;
    Choice best_c{};
    bool found = false;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const double budget = cs[i].C + slack;
      const double g_cur = alpha_fair_term(cs[i].W, alpha);
      for (int L = 0; L <= K; ++L) {
        const double sf = ts[i].SF[static_cast<std::size_t>(L)];
        if (sf <= 0.0) continue;
        const double cost_full = ts[i].C_of(L, 1.0);
        double nu;
        if (fractional) {
          nu = cost_full > 0.0 ? std::min(1.0, budget / cost_full) : 1.0;
        } else {
          if (cost_full > budget + 1e-15) continue;
          nu = 1.0;
        }
        if (nu <= 0.0) continue;
        Choice c{L, nu, ts[i].W_of(L, nu), ts[i].C_of(L, nu), 0.0};
        const double gain = alpha_fair_term(c.W, alpha) - g_cur;
        if (gain > best_gain) {
          best_gain = gain;
          best_i = i;
          best_c = c;
          found = true;
        }
      }
    }
    if (!found) break;
    cs[best_i] = best_c;
  }
}

// Exact water-filling over fractions for a fixed cutoff tuple: maximize
// sum g(W_i(nu_i)) under the capacity constraint. The per-file fraction at
// price eta is best_fraction(eta); total cost is non-increasing in eta.
double waterfill_fractions(const std::vector<FileTable>& ts,
                           const std::vector<int>& Ls, double capacity,
                           double alpha, std::vector<Choice>* out) {
  const std::size_t J = ts.size();
  std::vector<Choice> cs(J);
  const auto fill = [&](double eta) {
    double cost = 0.0;
    for (std::size_t i = 0; i < J; ++i) {
      const int L = Ls[i];
      if (L < 0 || ts[i].SF[static_cast<std::size_t>(L)] <= 0.0) {
        cs[i] = Choice{-1, 0.0, 0.0, 0.0, 0.0};
        continue;
      }
      const double nu = best_fraction(ts[i], L, eta, alpha);
      cs[i] = Choice{L, nu, ts[i].W_of(L, nu), ts[i].C_of(L, nu), 0.0};
      cost += cs[i].C;
    }
    return cost;
  };

  if (fill(0.0) > capacity) {
    double hi = 1.0;
    int d = 0;
    while (fill(hi) > capacity && d++ < kMaxDoublings) hi *= 2.0;
    double lo = 0.0;
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      (fill(mid) > capacity ? lo : hi) = mid;
    }
    fill(hi);
  }
  if (out) *out = cs;
  return total_objective(cs, alpha);
}

// Bounded exact search over cutoff tuples, warm-started from the repaired
// dual solution. Prunes with the Lagrangian bound at the final price: any
// completion satisfies sum g_i <= sum of per-cutoff max scores + price * C.
struct Polish {
  const std::vector<FileTable>& ts;
  double capacity;
  double alpha;
  bool fractional;
  double price;
  std::vector<std::vector<double>> scores;  // [i][L+1]
  std::vector<double> rest_bound;           // suffix sums of max scores
  long long nodes = 0;
  bool budget_hit = false;
  double incumbent = -kInf;
  std::vector<Choice> best;
  std::vector<int> Ls;

  void run(std::vector<Choice>& cs) {
    const std::size_t J = ts.size();
    incumbent = total_objective(cs, alpha);
    best = cs;
    rest_bound.assign(J + 1, 0.0);
    for (std::size_t i = J; i-- > 0;) {
      double m = -kInf;
      for (double s : scores[i]) m = std::max(m, s);
      rest_bound[i] = rest_bound[i + 1] + m;
    }
    Ls.assign(J, -1);
    dfs(0, 0.0, 0.0);
    cs = best;
  }

  void dfs(std::size_t i, double msc_sum, double used_ttl_cost) {
    if (budget_hit || ++nodes > kPolishNodeBudget) {
      budget_hit = true;
      return;
    }
    const std::size_t J = ts.size();
    if (msc_sum + rest_bound[i] + price * capacity <= incumbent + 1e-12)
      return;
    if (i == J) {
      std::vector<Choice> leaf;
      double obj;
      if (fractional) {
        obj = waterfill_fractions(ts, Ls, capacity, alpha, &leaf);
      } else {
        leaf.resize(J);
        obj = 0.0;
        for (std::size_t j = 0; j < J; ++j) {
          const double nu = Ls[j] >= 0 ? 1.0 : 0.0;
          leaf[j] = Choice{Ls[j], nu, ts[j].W_of(Ls[j], nu),
                           ts[j].C_of(Ls[j], nu), 0.0};
          obj += alpha_fair_term(leaf[j].W, alpha);
        }
      }
      if (obj > incumbent + 1e-14) {
        incumbent = obj;
        best = std::move(leaf);
      }
      return;
    }
    // Children in decreasing score order: the dual-optimal branch first.
    const int K = static_cast<int>(ts[i].SF.size()) - 1;
    std::vector<std::pair<double, int>> order;
    order.reserve(static_cast<std::size_t>(K) + 2);
    for (int L = -1; L <= K; ++L) {
      const double s = scores[i][static_cast<std::size_t>(L) + 1];
      if (s == -kInf) continue;
      order.emplace_back(-s, L);
    }
    std::sort(order.begin(), order.end());
    for (const auto& [neg_s, L] : order) {
      if (!fractional) {
        const double c = ts[i].C_of(L, 1.0);
        if (used_ttl_cost + c > capacity + 1e-15) continue;
        Ls[i] = L;
        dfs(i + 1, msc_sum - neg_s, used_ttl_cost + c);
      } else {
        Ls[i] = L;
        dfs(i + 1, msc_sum - neg_s, 0.0);
      }
      if (budget_hit) return;
    }
    Ls[i] = -1;
  }
};

SolveResult assemble(const Instance& inst,
                     const std::vector<DiscretizedModel>& models,
                     const std::vector<Choice>& cs, double gamma,
                     double alpha, bool maxmin) {
  SolveResult res;
  res.gamma = gamma;
  std::vector<double> Ws;
  double min_W = kInf;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    Policy p = make_fractional(cs[i].nu, cs[i].L, inst.K, inst.T);
    res.per_file.push_back(evaluate_file(p, models[i],
                                         inst.files[i].utility,
                                         inst.files[i].rate(),
                                         inst.files[i].size));
    Ws.push_back(res.per_file.back().W);
    min_W = std::min(min_W, res.per_file.back().W);
    res.policies.push_back(std::move(p));
  }
  res.aggregate = maxmin ? min_W : aggregate_utility(Ws, alpha);
  res.diag.capacity_residual = res.total_occupancy() - inst.capacity;
  return res;
}

SolveResult solve_constrained_maxmin(const Instance& inst,
                                     const std::vector<DiscretizedModel>& models,
                                     const std::vector<FileTable>& ts,
                                     bool fractional) {
  const std::size_t J = ts.size();
  const int K = inst.K;
  std::vector<double> caps(J);
  for (std::size_t i = 0; i < J; ++i) caps[i] = ts[i].cap();

  const std::function<detail::MinCostAlloc<ConstrainedChoice>(std::size_t,
                                                              double)>
      mc = [&](std::size_t i, double target) {
        detail::MinCostAlloc<ConstrainedChoice> out;
        if (target <= 0.0) {
          out.policy = ConstrainedChoice{-1, 0.0};
          return out;
        }
        const FileTable& t = ts[i];
        double best_cost = kInf;
        ConstrainedChoice best{-1, 0.0};
        for (int L = 0; L <= K; ++L) {
          const double sf = t.SF[static_cast<std::size_t>(L)];
          if (sf <= 0.0) continue;
          if (fractional) {
            const double y = target / (t.rate * sf);
            if (y > t.util->value_at_one() * (1.0 + 1e-12)) continue;
            const double nu = t.util->inverse_value(y);
            const double cost = t.C_of(L, nu);
            if (cost < best_cost) {
              best_cost = cost;
              best = ConstrainedChoice{L, nu};
            }
          } else {
            if (t.rate * t.util->value_at_one() * sf >=
                target * (1.0 - 1e-12)) {
              best_cost = t.C_of(L, 1.0);
              best = ConstrainedChoice{L, 1.0};
              break;  // SA is increasing in L: first feasible L is cheapest
            }
          }
        }
        if (best.cutoff < 0) {
          throw InfeasibleError("max-min: utility target unreachable");
        }
        out.cost = best_cost;
        out.achieved = ts[i].W_of(best.cutoff, best.fraction);
        out.policy = best;
        return out;
      };

  auto alloc = detail::lexicographic_maxmin<ConstrainedChoice>(
      caps, inst.capacity, mc);

  std::vector<Choice> cs(J);
  for (std::size_t i = 0; i < J; ++i) {
    const auto& ch = *alloc[i].policy;
    cs[i] = Choice{ch.cutoff, ch.fraction, ts[i].W_of(ch.cutoff, ch.fraction),
                   ts[i].C_of(ch.cutoff, ch.fraction), 0.0};
  }

  if (!fractional) {
    // Cutoffs are discrete, so the common level leaves slack; spend it
    // lexicographically, always trying to lift the lowest utility first.
    for (int round = 0; round < static_cast<int>(J) * (K + 2); ++round) {
      const double slack = inst.capacity - total_cost(cs);
      std::vector<std::size_t> order(J);
      for (std::size_t i = 0; i < J; ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (cs[a].W != cs[b].W) return cs[a].W < cs[b].W;
        return a < b;
      });
      bool upgraded = false;
      for (auto i : order) {
        if (cs[i].L >= K) continue;
        const int L2 = cs[i].L + 1;
        const double dc = ts[i].C_of(L2, 1.0) - cs[i].C;
        if (dc <= slack + 1e-15) {
          cs[i] = Choice{L2, 1.0, ts[i].W_of(L2, 1.0), ts[i].C_of(L2, 1.0),
                         0.0};
          upgraded = true;
          break;
        }
      }
      if (!upgraded) break;
    }
  }

  SolveResult res = assemble(inst, models, cs,
                             std::numeric_limits<double>::quiet_NaN(), 0.0,
                             /*maxmin=*/true);
  res.diag.method = fractional ? "fractional/lexicographic-maxmin"
                               : "ttl/lexicographic-maxmin";
  return res;
}

SolveResult solve_constrained(const Instance& inst, bool fractional) {
  inst.validate();
  const auto models = inst.discretize_all();
  const std::size_t J = inst.files.size();
  std::vector<FileTable> ts;
  ts.reserve(J);
  for (std::size_t i = 0; i < J; ++i)
    ts.push_back(make_table(models[i], inst.files[i]));

  if (inst.fairness.maxmin)
    return solve_constrained_maxmin(inst, models, ts, fractional);

  const double alpha = inst.fairness.alpha;
  if (alpha > 1.0 && !fractional) {
    // Every file needs W > 0, and the cheapest positive TTL choice is the
    // first bin alone.
    double min_usage = 0.0;
    for (const auto& t : ts) min_usage += t.C_of(0, 1.0);
    if (min_usage > inst.capacity) {
      throw InfeasibleError(
          "TTL with alpha > 1: capacity too small to give every file "
          "positive utility (needs " +
          std::to_string(min_usage) + ")");
    }
  }

  double best_dual = kInf;
  std::vector<Choice> cs(J);
  const auto respond = [&](double gamma) {
    double dual = gamma * inst.capacity;
    for (std::size_t i = 0; i < J; ++i) {
      cs[i] = best_choice(ts[i], gamma, alpha, fractional, nullptr);
      dual += cs[i].score;
    }
    best_dual = std::min(best_dual, dual);
    return total_cost(cs);
  };

  int iterations = 0;
  double gamma_hat = 0.0;
  if (respond(0.0) > inst.capacity) {
    double hi = 1.0;
    int d = 0;
    while (respond(hi) > inst.capacity) {
      hi *= 2.0;
      if (++d > kMaxDoublings) {
        throw NumericalError("solve_constrained: could not bracket gamma");
      }
    }
    double lo = 0.0;
    for (; iterations < kOuterBisectionIter; ++iterations) {
      const double mid = 0.5 * (lo + hi);
      (respond(mid) > inst.capacity ? lo : hi) = mid;
    }
    respond(hi);  // leave cs at the feasible side
    gamma_hat = hi;

    greedy_repair(cs, ts, inst.capacity, alpha, fractional);

    Polish polish{ts,        inst.capacity, alpha, fractional,
                  gamma_hat, {},            {},    0};
    polish.scores.resize(J);
    for (std::size_t i = 0; i < J; ++i) {
      best_choice(ts[i], gamma_hat, alpha, fractional, &polish.scores[i]);
    }
    polish.run(cs);

    SolveResult res = assemble(inst, models, cs, gamma_hat, alpha, false);
    res.diag.outer_iterations = iterations;
    res.diag.duality_gap =
        std::max(0.0, best_dual - total_objective(cs, alpha));
    res.diag.nodes_explored = polish.nodes;
    res.diag.method = std::string(fractional ? "fractional" : "ttl") +
                      "/dual-bisection+repair" +
                      (polish.budget_hit ? " (search truncated)" : "");
    return res;
  }

  // Unconstrained: full caching everywhere.
  SolveResult res = assemble(inst, models, cs, 0.0, alpha, false);
  res.diag.method =
      std::string(fractional ? "fractional" : "ttl") + "/unconstrained";
  return res;
}

}  // namespace

SolveResult solve_fractional(const Instance& inst) {
  return solve_constrained(inst, true);
}

SolveResult solve_ttl(const Instance& inst) {
  return solve_constrained(inst, false);
}

}  // namespace softttl
