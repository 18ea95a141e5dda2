#include "softttl/isotonic.hpp"

#include <random>

#include <doctest.h>

#include "oracles.hpp"

using softttl::isotonic_project;

TEST_CASE("already feasible vectors are unchanged") {
  const std::vector<double> v{0.9, 0.5, 0.5, 0.1};
  CHECK(isotonic_project(v) == v);
}

TEST_CASE("one violating pair pools to its mean") {
  const auto r = isotonic_project({0.2, 0.8});
  CHECK(r[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r[1] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("matches the active-set QP oracle on random vectors") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> ud(-0.5, 1.5);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<double> v(7);
    for (auto& x : v) x = ud(gen);
    const auto fast = isotonic_project(v);
    const auto exact = testsupport::isotonic_qp_oracle(v);
    REQUIRE(fast.size() == exact.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      CHECK(fast[i] == doctest::Approx(exact[i]).epsilon(1e-8));
    }
  }
}
