#include "softttl/distribution.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "oracles.hpp"
#include "softttl/rng.hpp"

using softttl::InterArrivalDistribution;

TEST_CASE("weibull_from_rate puts the mean at 1/rate") {
  // Gamma(2) = 1 and Gamma(3) = 2 give closed-form scales.
  CHECK(InterArrivalDistribution::weibull_from_rate(1.0, 1.0).scale() ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(InterArrivalDistribution::weibull_from_rate(0.5, 1.0).scale() ==
        doctest::Approx(0.5).epsilon(1e-14));

  // a = 0.7: scale frozen from an independent quadrature of the unit-scale
  // Weibull mean (Gamma(1 + 1/0.7) = 1.2658235060572833).
  const auto d = InterArrivalDistribution::weibull_from_rate(0.7, 1.0);
  CHECK(d.scale() == doctest::Approx(0.7899995498699060).epsilon(1e-12));
  CHECK(1.0 / testsupport::weibull_unit_mean(0.7) ==
        doctest::Approx(d.scale()).epsilon(1e-9));

  for (double a : {0.3, 0.7, 1.0}) {
    for (double rate : {0.5, 1.0, 4.0}) {
      const auto w = InterArrivalDistribution::weibull_from_rate(a, rate);
      CHECK(w.mean() * w.rate() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(w.rate() == doctest::Approx(rate).epsilon(1e-12));
    }
  }

  CHECK_THROWS_AS(InterArrivalDistribution::weibull_from_rate(0.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(InterArrivalDistribution::weibull_from_rate(0.7, -1.0),
                  std::invalid_argument);
}

TEST_CASE("cdf") {
  const auto exp1 = InterArrivalDistribution::weibull(1.0, 1.0);
  CHECK(exp1.cdf(0.0) == 0.0);
  CHECK(exp1.cdf(1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
  CHECK_THROWS_AS(exp1.cdf(-0.1), std::domain_error);

  // a = 0.7 at t = 1, frozen from quadrature of the density.
  const auto d = InterArrivalDistribution::weibull_from_rate(0.7, 1.0);
  CHECK(d.cdf(1.0) == doctest::Approx(0.6925369105357453).epsilon(1e-12));
  const double b = d.scale();
  const double quad = testsupport::simpson(
      [b](double t) {
        return 0.7 / b * std::pow(t / b, -0.3) *
               std::exp(-std::pow(t / b, 0.7));
      },
      1e-15, 1.0, 1e-11);
  CHECK(d.cdf(1.0) == doctest::Approx(quad).epsilon(1e-8));
}

TEST_CASE("hazard") {
  const auto exp_half = InterArrivalDistribution::weibull(1.0, 2.0);
  for (double t : {0.0, 0.4, 3.0, 100.0}) {
    CHECK(exp_half.hazard(t) == doctest::Approx(0.5).epsilon(1e-15));
  }

  const auto d = InterArrivalDistribution::weibull(0.7, 1.0);
  CHECK(d.hazard(1.0) == doctest::Approx(0.7).epsilon(1e-14));
  double prev = d.hazard(0.1);
  for (double t = 0.2; t < 2.0; t += 0.1) {
    const double h = d.hazard(t);
    CHECK(h < prev);  // decreasing hazard for a < 1
    prev = h;
  }
  CHECK_THROWS_AS(d.hazard(0.0), std::domain_error);
  CHECK_THROWS_AS(d.hazard(-1.0), std::domain_error);
}

TEST_CASE("sampling is the inverse of the cdf") {
  const auto exp1 = InterArrivalDistribution::weibull(1.0, 1.0);
  CHECK(exp1.sample(1.0 - std::exp(-1.0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(exp1.sample(0.0) == 0.0);
  CHECK_THROWS_AS(exp1.sample(1.0), std::domain_error);
  CHECK_THROWS_AS(exp1.sample(-0.1), std::domain_error);

  const auto d = InterArrivalDistribution::weibull_from_rate(0.7, 1.0);
  std::mt19937_64 gen(20240817);
  double sum = 0.0;
  const int n = 1'000'000;
  for (int i = 0; i < n; ++i) sum += d.sample(softttl::uniform53(gen));
  CHECK(sum / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("empirical cdf of samples matches cdf (Kolmogorov-Smirnov)") {
  const auto d = InterArrivalDistribution::weibull_from_rate(0.7, 2.0);
  std::mt19937_64 gen(7);
  std::vector<double> xs(100'000);
  for (auto& x : xs) x = d.sample(softttl::uniform53(gen));
  const double stat = testsupport::ks_statistic(
      std::move(xs), [&](double t) { return d.cdf(t); });
  CHECK(stat < 0.006164779987778185);  // 0.1% critical value for n = 1e5
}

TEST_CASE("cdf table distribution") {
  // Uniform on [0, 2]: mean 1, density 1/2.
  const auto u = InterArrivalDistribution::cdf_table({0.0, 2.0}, {0.0, 1.0});
  CHECK(u.mean() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(u.cdf(0.5) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(u.cdf(5.0) == 1.0);
  CHECK(u.quantile(0.25) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(u.hazard(1.0) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(InterArrivalDistribution::cdf_table({0.0, 1.0}, {0.0, 0.9}),
                  std::invalid_argument);
  CHECK_THROWS_AS(InterArrivalDistribution::cdf_table({0.5, 1.0}, {0.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("shape above one is accepted but flagged") {
  const auto d = InterArrivalDistribution::weibull(1.5, 1.0);
  CHECK(!d.warnings().empty());
  CHECK(InterArrivalDistribution::weibull(0.7, 1.0).warnings().empty());
}
