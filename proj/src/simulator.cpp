#include "softttl/simulator.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "softttl/discretize.hpp"
#include "softttl/rng.hpp"

namespace softttl {

std::string Trace::to_csv() const {
  std::string out = "n,tau\n";
  char buf[64];
  for (std::size_t n = 0; n < times.size(); ++n) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", n, times[n]);
    out += buf;
  }
  return out;
}

Trace generate_trace(const InterArrivalDistribution& d, double t_end,
                     std::uint64_t seed) {
  if (!(t_end > 0.0)) {
    throw std::invalid_argument("generate_trace: t_end must be > 0");
  }
  Trace tr;
  tr.t_end = t_end;
  tr.times.reserve(static_cast<std::size_t>(d.rate() * t_end * 1.05) + 16);
  tr.times.push_back(0.0);
  std::mt19937_64 gen(seed);
  double t = 0.0;
  for (;;) {
    double x = d.sample(uniform53(gen));
    while (x == 0.0) x = d.sample(uniform53(gen));  // keep times strict
    t += x;
    if (t > t_end) break;
    tr.times.push_back(t);
  }
  return tr;
}

double empirical_utility(const Policy& p, const Trace& tr,
                         const UtilityFunction& u) {
  double sum = 0.0;
  for (std::size_t n = 1; n < tr.times.size(); ++n) {
    const double gap = tr.times[n] - tr.times[n - 1];
    const double mu = p.at(gap);
    if (mu > 0.0) sum += u.value(mu);
  }
  return sum / tr.t_end;
}

double empirical_occupancy(const Policy& p, const Trace& tr, double size) {
  double area = 0.0;
  for (std::size_t n = 1; n < tr.times.size(); ++n) {
    area += p.integral(tr.times[n] - tr.times[n - 1]);
  }
  area += p.integral(tr.t_end - tr.times.back());
  return size * area / tr.t_end;
}

ValidationReport validate_lemma1(const FileSpec& file, const Policy& p,
                                 int replications, double t_end,
                                 std::uint64_t seed, bool parallel) {
  if (replications < 1) {
    throw std::invalid_argument("validate_lemma1: need >= 1 replication");
  }
  ValidationReport rep;
  rep.t_end = t_end;
  rep.replications = replications;

  const DiscretizedModel model = discretize(file.dist, p.T(), p.K());
  rep.analytic = evaluate_file(p, model, file.utility, file.rate(), file.size);

  std::vector<double> Ws(replications), Cs(replications);
  std::vector<long long> counts(replications);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel && replications > 1)
#endif
  for (int r = 0; r < replications; ++r) {
    const Trace tr = generate_trace(file.dist, t_end, derive_seed(seed, r));
    Ws[r] = empirical_utility(p, tr, file.utility);
    Cs[r] = empirical_occupancy(p, tr, file.size);
    counts[r] = static_cast<long long>(tr.arrivals());
  }

  const auto stats = [&](const std::vector<double>& xs) {
    ReplicationStats s;
    s.n = replications;
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= replications;
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var = replications > 1 ? var / (replications - 1) : 0.0;
    s.mean = mean;
    s.std_err = std::sqrt(var / replications);
    return s;
  };
  rep.utility = stats(Ws);
  rep.occupancy = stats(Cs);
  for (long long c : counts) rep.total_arrivals += c;

  const auto z = [](const ReplicationStats& s, double target) {
    const double diff = s.mean - target;
    if (s.std_err > 0.0) return diff / s.std_err;
    return diff == 0.0 ? 0.0 : std::copysign(HUGE_VAL, diff);
  };
  rep.z_utility = z(rep.utility, rep.analytic.W);
  rep.z_occupancy = z(rep.occupancy, rep.analytic.C);
  return rep;
}

}  // namespace softttl
