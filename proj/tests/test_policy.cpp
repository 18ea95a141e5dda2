#include "softttl/policy.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "softttl/errors.hpp"
#include "softttl/evaluate.hpp"

using namespace softttl;

TEST_CASE("policy lookup uses left-closed bins and a persistent tail") {
  const Policy p({0.6, 0.3, 0.1}, 1.0);
  CHECK(p.at(0.5) == 0.6);
  CHECK(p.at(1.0) == 0.3);  // boundary belongs to the next bin
  CHECK(p.at(5.0) == 0.1);  // beyond KT the last fraction persists
  CHECK_THROWS_AS(p.at(-1.0), std::domain_error);
}

TEST_CASE("construction snaps tiny violations and rejects real ones") {
  const Policy snapped({0.5, 0.5 + 5e-13, 0.2}, 1.0);
  CHECK(snapped.fractions()[1] == 0.5);
  CHECK_THROWS_AS(Policy({0.5, 0.6, 0.2}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Policy({1.1, 0.5}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Policy({0.5, -0.2}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Policy({0.5}, 0.0), std::invalid_argument);
}

TEST_CASE("fractional and ttl constructors") {
  const Policy f = make_fractional(0.4, 0, 2, 1.0);
  CHECK(f.fractions() == std::vector<double>{0.4, 0.0, 0.0});
  CHECK(make_fractional(1.0, 2, 2, 1.0).fractions() ==
        std::vector<double>{1.0, 1.0, 1.0});
  CHECK(make_fractional(0.7, -1, 2, 1.0).fractions() ==
        std::vector<double>{0.0, 0.0, 0.0});
  CHECK(make_ttl(0, 2, 1.0).fractions() == std::vector<double>{1.0, 0.0, 0.0});
  CHECK_THROWS_AS(make_fractional(1.2, 0, 2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_fractional(0.5, 3, 2, 1.0), std::invalid_argument);
}

TEST_CASE("renewal-reward evaluation") {
  const auto u = UtilityFunction::power(0.5);
  const auto m = discretize(InterArrivalDistribution::exponential(1.0), 0.1, 30);

  SUBCASE("full caching: W = rate * w(1), C = size") {
    const Policy ones = make_ttl(30, 30, 0.1);
    const auto e = evaluate_file(ones, m, u, 1.0, 1.0);
    CHECK(e.W == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(e.C == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("empty policy: zero") {
    const auto e = evaluate_file(make_fractional(0.0, -1, 30, 0.1), m, u, 1.0,
                                 1.0);
    CHECK(e.W == 0.0);
    CHECK(e.C == 0.0);
  }
  SUBCASE("memoryless constant fraction: W = sqrt(nu), C = nu") {
    const auto e =
        evaluate_file(make_fractional(0.36, 30, 30, 0.1), m, u, 1.0, 1.0);
    CHECK(e.W == doctest::Approx(0.6).epsilon(1e-9));
    CHECK(e.C == doctest::Approx(0.36).epsilon(1e-9));
  }
  SUBCASE("grid mismatch is an error") {
    CHECK_THROWS_AS(
        evaluate_file(make_ttl(9, 9, 0.1), m, u, 1.0, 1.0), ShapeError);
  }
}

TEST_CASE("evaluation is monotone, concave in W and linear in C") {
  const auto u = UtilityFunction::power(0.5);
  const auto m =
      discretize(InterArrivalDistribution::weibull_from_rate(0.6, 2.0), 0.05,
                 20);
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  const auto random_policy = [&] {
    std::vector<double> mu(21);
    double level = 1.0;
    for (auto& x : mu) {
      level *= ud(gen);
      x = level;
    }
    return Policy(mu, 0.05);
  };
  for (int trial = 0; trial < 50; ++trial) {
    const Policy a = random_policy(), b = random_policy();
    const double theta = ud(gen);
    std::vector<double> mix(21);
    for (int k = 0; k <= 20; ++k) {
      mix[k] = theta * a.fractions()[k] + (1 - theta) * b.fractions()[k];
    }
    const Policy c(mix, 0.05);
    const auto ea = evaluate_file(a, m, u, 2.0, 1.5);
    const auto eb = evaluate_file(b, m, u, 2.0, 1.5);
    const auto ec = evaluate_file(c, m, u, 2.0, 1.5);
    CHECK(ec.W >= theta * ea.W + (1 - theta) * eb.W - 1e-12);
    CHECK(ec.C ==
          doctest::Approx(theta * ea.C + (1 - theta) * eb.C).epsilon(1e-12));
    CHECK(ea.W <= 2.0 * u.value(1.0) + 1e-12);
    CHECK(ea.C <= 1.5 + 1e-12);

    // Raising one bin never decreases either quantity.
    std::vector<double> up = a.fractions();
    const int k = static_cast<int>(ud(gen) * 20);
    up[k] = k == 0 ? 1.0 : up[k - 1];
    const auto eu = evaluate_file(Policy(up, 0.05), m, u, 2.0, 1.5);
    CHECK(eu.W >= ea.W - 1e-15);
    CHECK(eu.C >= ea.C - 1e-15);
  }
}

TEST_CASE("alpha-fair aggregate") {
  CHECK(aggregate_utility({1.0, 2.0, 3.0}, 0.0) == 6.0);
  CHECK(aggregate_utility({4.0}, 0.5) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(aggregate_utility({1.0, 2.0}, 2.0) ==
        doctest::Approx(-1.5).epsilon(1e-15));
  CHECK_THROWS_AS(aggregate_utility({1.0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(aggregate_utility({0.0, 1.0}, 2.0), std::invalid_argument);
}

TEST_CASE("utility function contracts") {
  const auto u = UtilityFunction::power(0.5);
  CHECK(u.value(0.25) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(u.deriv(0.25) == doctest::Approx(1.0).epsilon(1e-15));
  for (double y : {0.6, 1.0, 7.5}) {
    CHECK(u.deriv(u.fraction_for_marginal(y)) ==
          doctest::Approx(y).epsilon(1e-10));
  }
  CHECK(u.fraction_for_marginal(0.2) == 1.0);  // below the range of w'
  CHECK(u.inverse_value(0.5) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK_THROWS_AS(UtilityFunction::power(1.0), std::invalid_argument);
  CHECK_THROWS_AS(UtilityFunction::power(0.0), std::invalid_argument);
}

TEST_CASE("policy csv serialization") {
  const Policy p({0.5, 0.25}, 0.5);
  CHECK(p.to_csv() == "k,t_start,mu\n0,0,0.5\n1,0.5,0.25\n");
}
