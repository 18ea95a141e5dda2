#include "softttl/discretize.hpp"

#include <cmath>
#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "softttl/errors.hpp"

using namespace softttl;

namespace {
const double kLn2 = std::log(2.0);
}

TEST_CASE("exponential closed forms (rate 1, T = ln 2, K = 2)") {
  const auto d = InterArrivalDistribution::exponential(1.0);
  const auto m = discretize(d, kLn2, 2);
  CHECK(m.F[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(m.F[1] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(m.F[2] == doctest::Approx(0.25).epsilon(1e-12));
  // Interval integrals of exp(-t) telescoped: same values.
  CHECK(m.A[0] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(m.A[1] == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(m.A[2] == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("mass and area identities over random draws") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> ua(0.1, 1.0), ul(0.5, 5.0),
      ut(0.01, 1.0);
  std::uniform_int_distribution<int> uk(2, 200);
  for (int i = 0; i < 40; ++i) {
    const double a = ua(gen), lam = ul(gen), T = ut(gen);
    const int K = uk(gen);
    const auto m =
        discretize(InterArrivalDistribution::weibull_from_rate(a, lam), T, K);
    double sf = 0.0, sa = 0.0;
    for (int k = 0; k <= K; ++k) {
      sf += m.F[k];
      sa += m.A[k];
      CHECK(m.F[k] >= 0.0);
      CHECK(m.A[k] > 0.0);
      if (k < K) CHECK(m.A[k] <= T + 1e-12);
    }
    CHECK(std::abs(sf - 1.0) < 1e-9);
    CHECK(std::abs(sa - 1.0 / lam) < 1e-9);
  }
}

TEST_CASE("areas bracketed by the survival function at the bin edges") {
  const auto d = InterArrivalDistribution::weibull_from_rate(0.4, 2.0);
  const auto m = discretize(d, 0.05, 50);
  for (int k = 0; k < m.K; ++k) {
    CHECK(m.A[k] <= m.T * d.survival(k * m.T) + 1e-12);
    CHECK(m.A[k] >= m.T * d.survival((k + 1) * m.T) - 1e-12);
  }
}

TEST_CASE("tail area equals the truncated tail integral") {
  const auto d = InterArrivalDistribution::weibull_from_rate(0.7, 1.0);
  const auto m = discretize(d, 0.03, 100);
  // Integrate the survival far enough that the remainder is negligible.
  const double tail = testsupport::simpson(
      [&](double t) { return d.survival(t); }, 100 * 0.03, 60.0, 1e-12);
  CHECK(m.A[100] == doctest::Approx(tail).epsilon(1e-8));
}

TEST_CASE("hazard ratio profile") {
  SUBCASE("exponential: exactly 1/rate in every bin") {
    for (double lam : {0.5, 2.0}) {
      const auto m =
          discretize(InterArrivalDistribution::exponential(lam), 0.1, 40);
      for (double r : hazard_ratio_profile(m)) {
        CHECK(r == doctest::Approx(1.0 / lam).epsilon(1e-9));
      }
    }
  }
  SUBCASE("a = 0.7: non-decreasing, approaching the inverse hazard") {
    const auto d = InterArrivalDistribution::weibull_from_rate(0.7, 1.0);
    const auto m = discretize(d, 0.03, 100);
    const auto r = hazard_ratio_profile(m);
    for (std::size_t k = 1; k < r.size(); ++k) CHECK(r[k] >= r[k - 1] - 1e-12);

    // Refining T (fixed horizon KT) shrinks the gap to 1/h at the left edge.
    const auto gap = [&](double T, int K) {
      const auto mm = discretize(d, T, K);
      const auto rr = hazard_ratio_profile(mm);
      double worst = 0.0;
      for (int k = 1; k <= K / 2; ++k) {
        worst = std::max(worst,
                         std::abs(rr[k] - 1.0 / d.hazard(k * T)));
      }
      return worst;
    };
    CHECK(gap(0.003, 1000) < 0.2 * gap(0.03, 100));
  }
  SUBCASE("bounded support reports +inf past the support") {
    const auto u = InterArrivalDistribution::cdf_table({0.0, 1.0}, {0.0, 1.0});
    const auto m = discretize(u, 0.5, 4);
    const auto r = hazard_ratio_profile(m);
    CHECK(std::isinf(r[3]));
  }
}

TEST_CASE("regime classification") {
  const double T = 0.03;
  const int K = 100;
  CHECK(classify_regime(
            discretize(InterArrivalDistribution::exponential(1.0), T, K),
            1e-6) == Regime::kMemoryless);
  CHECK(classify_regime(
            discretize(InterArrivalDistribution::weibull_from_rate(0.1, 1.0),
                       T, K),
            1e-6) == Regime::kBursty);
  CHECK(classify_regime(
            discretize(InterArrivalDistribution::weibull_from_rate(0.7, 1.0),
                       T, K),
            1e-6) == Regime::kIntermediate);
}

TEST_CASE("argument validation") {
  const auto d = InterArrivalDistribution::exponential(1.0);
  CHECK_THROWS_AS(discretize(d, 0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(discretize(d, 0.1, 0), std::invalid_argument);
}
