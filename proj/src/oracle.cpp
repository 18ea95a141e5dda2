#include "softttl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "softttl/errors.hpp"

namespace softttl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const char* kBudgetMsg =
    "brute_force_oracle: search space exceeds the candidate budget";

struct Candidate {
  double W = 0.0;
  double C = 0.0;
  std::vector<double> mu;  // full fraction vector on the grid
};

double log_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Number of non-increasing sequences of length len over g+1 levels.
double log_monotone_count(int g, int len) {
  return log_choose(len + g, g);
}

void enumerate_soft(const DiscretizedModel& m, const UtilityFunction& u,
                    double rate, double size, int g,
                    std::vector<Candidate>& out) {
  const int K = m.K;
  std::vector<double> level_value(g + 1), level_frac(g + 1);
  for (int l = 0; l <= g; ++l) {
    level_frac[l] = static_cast<double>(l) / g;
    level_value[l] = l == 0 ? 0.0 : u.value(level_frac[l]);
  }
  std::vector<int> levels(K + 1);
  // Descending-level DFS; emits candidates in a fixed deterministic order.
  auto rec = [&](auto&& self, int k, int prev, double W, double C) -> void {
    if (k > K) {
      Candidate c;
      c.W = W;
      c.C = C;
      c.mu.resize(K + 1);
      for (int j = 0; j <= K; ++j) c.mu[j] = level_frac[levels[j]];
      out.push_back(std::move(c));
      return;
    }
    for (int l = prev; l >= 0; --l) {
      levels[k] = l;
      self(self, k + 1, l, W + rate * level_value[l] * m.F[k],
           C + rate * size * level_frac[l] * m.A[k]);
    }
  };
  rec(rec, 0, g, 0.0, 0.0);
}

void enumerate_cutoff(const DiscretizedModel& m, const UtilityFunction& u,
                      double rate, double size, int g, bool fractional,
                      std::vector<Candidate>& out) {
  const int K = m.K;
  std::vector<double> SF(K + 1), SA(K + 1);
  double sf = 0.0, sa = 0.0;
  for (int k = 0; k <= K; ++k) {
    sf += m.F[k];
    sa += m.A[k];
    SF[k] = sf;
    SA[k] = sa;
  }
  const auto push = [&](int L, double nu) {
    Candidate c;
    c.W = L >= 0 && nu > 0.0 ? rate * u.value(nu) * SF[L] : 0.0;
    c.C = L >= 0 ? rate * size * nu * SA[L] : 0.0;
    c.mu.assign(K + 1, 0.0);
    for (int k = 0; k <= L; ++k) c.mu[k] = nu;
    out.push_back(std::move(c));
  };
  push(-1, 0.0);
  for (int L = 0; L <= K; ++L) {
    if (fractional) {
      for (int j = 1; j <= g; ++j) push(L, static_cast<double>(j) / g);
    } else {
      push(L, 1.0);
    }
  }
}

// Exact single-file search over monotone grid sequences by depth-first
// branch and bound: capacity pruning (occupancy only grows along a branch)
// plus the optimistic completion bound W + w(level) * rate * tailF.
struct SingleFileSearch {
  const DiscretizedModel& m;
  const UtilityFunction& u;
  double rate, size, capacity;
  int g;
  long long budget;

  std::vector<double> tailF, level_value, level_frac;
  std::vector<int> levels, best_levels;
  double best_W = -1.0;
  long long nodes = 0;

  void run() {
    const int K = m.K;
    tailF.assign(K + 2, 0.0);
    for (int k = K; k >= 0; --k) tailF[k] = tailF[k + 1] + m.F[k];
    level_value.resize(g + 1);
    level_frac.resize(g + 1);
    for (int l = 0; l <= g; ++l) {
      level_frac[l] = static_cast<double>(l) / g;
      level_value[l] = l == 0 ? 0.0 : u.value(level_frac[l]);
    }
    levels.assign(K + 1, 0);
    best_levels.assign(K + 1, 0);
    double sumF = 0.0, sumA = 0.0;
    for (int k = 0; k <= K; ++k) {
      sumF += m.F[k];
      sumA += m.A[k];
    }
    // Feasible incumbent from the best constant policy.
    for (int l = g; l >= 0; --l) {
      if (rate * size * level_frac[l] * sumA <= capacity) {
        best_W = rate * level_value[l] * sumF;
        std::fill(best_levels.begin(), best_levels.end(), l);
        break;  // lower constants are dominated
      }
    }
    dfs(0, g, 0.0, 0.0);
  }

  void dfs(int k, int prev, double W, double C) {
    if (++nodes > budget) throw std::invalid_argument(kBudgetMsg);
    if (k > m.K) {
      if (W > best_W) {
        best_W = W;
        best_levels = levels;
      }
      return;
    }
    if (W + rate * level_value[prev] * tailF[k] <= best_W) return;
    for (int l = prev; l >= 0; --l) {
      const double C2 = C + rate * size * level_frac[l] * m.A[k];
      if (C2 > capacity) continue;  // lower levels may still fit
      levels[k] = l;
      dfs(k + 1, l, W + rate * level_value[l] * m.F[k], C2);
    }
  }
};

struct Objective {
  double alpha = 0.0;
  bool maxmin = false;

  // alpha-fair partial score, or placeholder under maxmin.
  double term(double W) const {
    return maxmin ? 0.0 : alpha_fair_term(W, alpha);
  }
};

// Lexicographic comparison of sorted utility vectors (max-min order).
bool maxmin_less(const std::vector<double>& a, const std::vector<double>& b) {
  auto sa = a, sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (sa[i] != sb[i]) return sa[i] < sb[i];
  }
  return false;
}

struct JointSearch {
  const std::vector<std::vector<Candidate>>& lists;
  double capacity;
  Objective obj;
  long long budget;

  std::vector<double> suffix_bound;  // alpha-fair only
  long long nodes = 0;

  struct Best {
    double score = -kInf;
    std::vector<double> Ws;
    std::vector<int> picks;
    bool valid = false;
  };

  // Serial result is "first found wins" over strictly better scores in
  // index order; the parallel merge reproduces exactly that order.
  bool improves(const Best& cand, const Best& cur) const {
    if (!cur.valid) return true;
    if (obj.maxmin) {
      if (maxmin_less(cur.Ws, cand.Ws)) return true;
      if (maxmin_less(cand.Ws, cur.Ws)) return false;
    } else {
      if (cand.score > cur.score) return true;
      if (cand.score < cur.score) return false;
    }
    return cand.picks < cur.picks;  // deterministic tie-break
  }

  void prepare() {
    const std::size_t J = lists.size();
    suffix_bound.assign(J + 1, 0.0);
    if (!obj.maxmin) {
      for (std::size_t i = J; i-- > 0;) {
        double mx = -kInf;
        for (const auto& c : lists[i]) mx = std::max(mx, obj.term(c.W));
        suffix_bound[i] = suffix_bound[i + 1] + mx;
      }
    }
  }

  void dfs(std::size_t i, double used, double score, std::vector<int>& picks,
           std::vector<double>& Ws, Best& best) {
    if (++nodes > budget) throw std::invalid_argument(kBudgetMsg);
    if (i == lists.size()) {
      Best cand{score, Ws, picks, true};
      if (improves(cand, best)) best = std::move(cand);
      return;
    }
    if (!obj.maxmin && best.valid &&
        score + suffix_bound[i] < best.score) {
      return;
    }
    for (std::size_t idx = 0; idx < lists[i].size(); ++idx) {
      const auto& c = lists[i][idx];
      if (used + c.C > capacity + 1e-15 * capacity) continue;
      picks[i] = static_cast<int>(idx);
      Ws[i] = c.W;
      dfs(i + 1, used + c.C, score + obj.term(c.W), picks, Ws, best);
    }
    picks[i] = -1;
  }

  Best run(bool parallel) {
    prepare();
    const std::size_t J = lists.size();
    const int n0 = static_cast<int>(lists[0].size());
    std::vector<Best> partial(n0);
    std::vector<long long> node_counts(n0, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel && n0 > 1)
#endif
    for (int idx = 0; idx < n0; ++idx) {
      const auto& c = lists[0][idx];
      if (c.C > capacity + 1e-15 * capacity) continue;
      std::vector<int> picks(J, -1);
      std::vector<double> Ws(J, 0.0);
      picks[0] = idx;
      Ws[0] = c.W;
      JointSearch local = *this;  // per-branch node counter
      local.nodes = 0;
      local.dfs(1, c.C, obj.term(c.W), picks, Ws, partial[idx]);
      node_counts[idx] = local.nodes;
    }
    Best best;
    nodes = 0;
    for (int idx = 0; idx < n0; ++idx) {
      nodes += node_counts[idx];
      if (partial[idx].valid && improves(partial[idx], best))
        best = partial[idx];
    }
    if (nodes > budget) throw std::invalid_argument(kBudgetMsg);
    return best;
  }
};

}  // namespace

const char* to_string(PolicyMode m) {
  switch (m) {
    case PolicyMode::kSoft: return "soft";
    case PolicyMode::kFractional: return "fractional";
    case PolicyMode::kTtl: return "ttl";
  }
  return "unknown";
}

SolveResult brute_force_oracle(const Instance& inst, PolicyMode mode,
                               const OracleOptions& opt) {
  inst.validate();
  if (opt.grid_steps < 1)
    throw std::invalid_argument("brute_force_oracle: grid_steps must be >= 1");
  const auto models = inst.discretize_all();
  const std::size_t J = inst.files.size();
  const Objective obj{inst.fairness.alpha, inst.fairness.maxmin};

  SolveResult res;
  res.gamma = std::numeric_limits<double>::quiet_NaN();
  res.diag.method = std::string("oracle/") + to_string(mode);

  if (mode == PolicyMode::kSoft && J == 1) {
    SingleFileSearch s{models[0],          inst.files[0].utility,
                       inst.files[0].rate(), inst.files[0].size,
                       inst.capacity,      opt.grid_steps,
                       opt.budget};
    s.run();
    std::vector<double> mu(s.best_levels.size());
    for (std::size_t k = 0; k < mu.size(); ++k)
      mu[k] = static_cast<double>(s.best_levels[k]) / opt.grid_steps;
    Policy p(std::move(mu), inst.T);
    res.per_file.push_back(evaluate_file(p, models[0], inst.files[0].utility,
                                         inst.files[0].rate(),
                                         inst.files[0].size));
    res.policies.push_back(std::move(p));
    res.aggregate = obj.maxmin ? res.per_file[0].W
                               : aggregate_utility({res.per_file[0].W},
                                                   inst.fairness.alpha);
    res.diag.nodes_explored = s.nodes;
    res.diag.capacity_residual = res.total_occupancy() - inst.capacity;
    return res;
  }

  // Joint product search over per-file candidate lists.
  double log_total = 0.0;
  for (std::size_t i = 0; i < J; ++i) {
    double log_count;
    if (mode == PolicyMode::kSoft) {
      log_count = log_monotone_count(opt.grid_steps, inst.K + 1);
    } else if (mode == PolicyMode::kFractional) {
      log_count = std::log(1.0 + (inst.K + 1.0) * opt.grid_steps);
    } else {
      log_count = std::log(inst.K + 2.0);
    }
    log_total += log_count;
  }
  if (log_total > std::log(static_cast<double>(opt.budget))) {
    throw std::invalid_argument(kBudgetMsg);
  }

  std::vector<std::vector<Candidate>> lists(J);
  for (std::size_t i = 0; i < J; ++i) {
    if (mode == PolicyMode::kSoft) {
      enumerate_soft(models[i], inst.files[i].utility, inst.files[i].rate(),
                     inst.files[i].size, opt.grid_steps, lists[i]);
    } else {
      enumerate_cutoff(models[i], inst.files[i].utility, inst.files[i].rate(),
                       inst.files[i].size, opt.grid_steps,
                       mode == PolicyMode::kFractional, lists[i]);
    }
  }

  JointSearch search{lists, inst.capacity, obj, opt.budget};
  auto best = search.run(opt.parallel);
  if (!best.valid) {
    throw InfeasibleError("brute_force_oracle: no feasible grid candidate");
  }

  std::vector<double> Ws;
  for (std::size_t i = 0; i < J; ++i) {
    const auto& c = lists[i][static_cast<std::size_t>(best.picks[i])];
    Policy p(c.mu, inst.T);
    res.per_file.push_back(evaluate_file(p, models[i], inst.files[i].utility,
                                         inst.files[i].rate(),
                                         inst.files[i].size));
    Ws.push_back(res.per_file.back().W);
    res.policies.push_back(std::move(p));
  }
  res.aggregate = obj.maxmin
                      ? *std::min_element(Ws.begin(), Ws.end())
                      : aggregate_utility(Ws, inst.fairness.alpha);
  res.diag.nodes_explored = search.nodes;
  res.diag.capacity_residual = res.total_occupancy() - inst.capacity;
  return res;
}

}  // namespace softttl
