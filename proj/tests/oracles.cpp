#include "oracles.hpp"

#include <algorithm>
#include <cmath>

#include "softttl/isotonic.hpp"

namespace testsupport {

namespace {

double simpson_rule(const std::function<double(double)>& f, double a,
                    double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_rec(const std::function<double(double)>& f, double a,
                   double fa, double b, double fb, double fm, double whole,
                   double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson_rule(f, a, fa, m, fm, flm);
  const double right = simpson_rule(f, m, fm, b, fb, frm);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return simpson_rec(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double simpson(const std::function<double(double)>& f, double a, double b,
               double tol, int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = simpson_rule(f, a, fa, b, fb, fm);
  return simpson_rec(f, a, fa, b, fb, fm, whole, tol, max_depth);
}

double weibull_unit_mean(double a) {
  // exp(-t^a) < 1e-16 once t^a > 37.
  const double cut = std::pow(37.0, 1.0 / a);
  const auto f = [a](double t) {
    return t <= 0.0 ? 1.0 : std::exp(-std::pow(t, a));
  };
  return simpson(f, 0.0, cut, 1e-12);
}

std::vector<double> pg_single_file(const softttl::DiscretizedModel& m,
                                   const softttl::UtilityFunction& u,
                                   double capacity, double rate, double size) {
  const std::size_t n = m.F.size();
  const auto occupancy = [&](const std::vector<double>& mu) {
    double c = 0.0;
    for (std::size_t k = 0; k < n; ++k) c += mu[k] * m.A[k];
    return rate * size * c;
  };
  const auto maximize = [&](double gamma) {
    std::vector<double> mu(n, 0.5);
    double step = 1.0;
    const auto objective = [&](const std::vector<double>& x) {
      double v = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (x[k] > 0.0) v += u.value(x[k]) * m.F[k];
        v -= gamma * size * x[k] * m.A[k];
      }
      return v;
    };
    double cur = objective(mu);
    for (int it = 0; it < 20000; ++it) {
      std::vector<double> grad(n);
      for (std::size_t k = 0; k < n; ++k) {
        grad[k] = u.deriv(std::max(mu[k], 1e-12)) * m.F[k] -
                  gamma * size * m.A[k];
      }
      // Backtracking projected ascent step.
      bool improved = false;
      for (int bt = 0; bt < 60; ++bt) {
        std::vector<double> cand(n);
        for (std::size_t k = 0; k < n; ++k) cand[k] = mu[k] + step * grad[k];
        cand = softttl::isotonic_project(std::move(cand));
        const double val = objective(cand);
        if (val > cur + 1e-16) {
          mu = std::move(cand);
          cur = val;
          improved = true;
          step *= 1.3;
          break;
        }
        step *= 0.5;
      }
      if (!improved) break;
    }
    return mu;
  };

  std::vector<double> ones(n, 1.0);
  if (occupancy(ones) <= capacity) return ones;
  double lo = 0.0, hi = 1.0;
  while (occupancy(maximize(hi)) >= capacity) hi *= 2.0;
  std::vector<double> best;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    best = maximize(mid);
    (occupancy(best) > capacity ? lo : hi) = mid;
  }
  return maximize(hi);
}

std::vector<double> isotonic_qp_oracle(const std::vector<double>& v) {
  const int n = static_cast<int>(v.size());
  std::vector<double> best;
  double best_dist = HUGE_VAL;
  // Equality pattern: bit k of `ties` forces x[k] == x[k+1], carving the
  // indices into consecutive blocks; each block is then pinned at 0, at 1,
  // or left free at its mean. Feasible candidates cover every active set,
  // so the best of them is the projection.
  for (int ties = 0; ties < (1 << (n - 1)); ++ties) {
    std::vector<std::pair<int, int>> blocks;  // [begin, end)
    int begin = 0;
    for (int k = 0; k < n - 1; ++k) {
      if (!(ties & (1 << k))) {
        blocks.emplace_back(begin, k + 1);
        begin = k + 1;
      }
    }
    blocks.emplace_back(begin, n);
    const int nb = static_cast<int>(blocks.size());
    std::vector<int> pin(nb, 0);
    for (long long combo = 0; combo < static_cast<long long>(std::pow(3, nb));
         ++combo) {
      long long c = combo;
      for (int b = 0; b < nb; ++b) {
        pin[b] = static_cast<int>(c % 3);
        c /= 3;
      }
      std::vector<double> x(n);
      for (int b = 0; b < nb; ++b) {
        double value;
        if (pin[b] == 1) {
          value = 0.0;
        } else if (pin[b] == 2) {
          value = 1.0;
        } else {
          double sum = 0.0;
          for (int i = blocks[b].first; i < blocks[b].second; ++i) sum += v[i];
          value = sum / (blocks[b].second - blocks[b].first);
        }
        for (int i = blocks[b].first; i < blocks[b].second; ++i) x[i] = value;
      }
      bool feasible = true;
      for (int i = 0; i < n && feasible; ++i) {
        if (x[i] < -1e-12 || x[i] > 1.0 + 1e-12) feasible = false;
        if (i + 1 < n && x[i + 1] > x[i] + 1e-12) feasible = false;
      }
      if (!feasible) continue;
      double dist = 0.0;
      for (int i = 0; i < n; ++i) dist += (x[i] - v[i]) * (x[i] - v[i]);
      if (dist < best_dist) {
        best_dist = dist;
        best = x;
      }
    }
  }
  return best;
}

double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double F = cdf(samples[i]);
    d = std::max(d, std::abs(F - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - F));
  }
  return d;
}

}  // namespace testsupport
