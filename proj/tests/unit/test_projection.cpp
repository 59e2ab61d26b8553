#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include <urysohn/projection.hpp>
#include <urysohn/verification.hpp>

#include "oracles.hpp"

using namespace urysohn;

TEST_CASE("project: constants, quadratics and midpoint values") {
  for (int r = 0; r <= max_half_degree; ++r) {
    const auto p = project([](double) { return 2.5; }, UniformMesh(3), r);
    for (int k = 0; k <= 30; ++k) CHECK(std::abs(p(k / 30.0) - 2.5) <= 1e-13);
  }

  const auto sq = project([](double t) { return t * t; }, UniformMesh(2), 1);
  for (int k = 0; k <= 40; ++k) {
    const double s = k / 40.0;
    CHECK(std::abs(sq(s) - s * s) <= 1e-14);
  }

  const auto lin = project([](double t) { return 4.0 * t; }, UniformMesh(2), 0);
  REQUIRE(lin.values().size() == 2);
  CHECK(lin.values()[0] == 1.0);
  CHECK(lin.values()[1] == 3.0);
}

TEST_CASE("project propagates evaluation failures") {
  const auto bad = [](double t) -> double {
    if (t > 0.5) throw std::domain_error("outside domain");
    return t;
  };
  CHECK_THROWS_AS(project(bad, UniformMesh(2), 0), std::domain_error);
}

TEST_CASE("divided differences") {
  const RealFunction sq = [](double t) { return t * t; };
  const RealFunction dsq = [](double t) { return 2.0 * t; };
  CHECK(divided_difference({0.0, 1.0}, sq) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(divided_difference({0.0, 0.5, 1.0}, sq) == doctest::Approx(1.0).epsilon(1e-15));
  for (double a : {0.0, 0.2, 0.9}) {
    CHECK(divided_difference({a, 0.4, 0.4}, sq, dsq) == doctest::Approx(1.0).epsilon(1e-12));
  }

  // Confluent form against the limit of distinct-point differences.
  const RealFunction f = [](double t) { return std::exp(t) / (1.0 + t); };
  const RealFunction df = [](double t) { return std::exp(t) * t / ((1.0 + t) * (1.0 + t)); };
  for (double a : {0.1, 0.7}) {
    for (double s : {0.35, 0.8}) {
      const double want = oracle::confluent_limit(f, a, s);
      CHECK(divided_difference({a, s, s}, f, df) == doctest::Approx(want).epsilon(1e-6));
    }
  }
  CHECK(divided_difference({0.2, 0.5, 0.9}, f) == doctest::Approx(oracle::second_difference(f, 0.2, 0.5, 0.9)).epsilon(1e-13));

  CHECK_THROWS_AS(divided_difference({0.3, 0.3, 0.3}, sq, dsq), std::invalid_argument);
  CHECK_THROWS_AS(divided_difference({0.3, 0.3}, sq), std::invalid_argument);
  CHECK_THROWS_AS(divided_difference({}, sq), std::invalid_argument);
}

TEST_CASE("Newton form table") {
  const RealFunction cube = [](double t) { return t * t * t - t; };
  const DividedDifferenceTable table({0.0, 0.25, 0.6, 1.0}, cube);
  REQUIRE(table.coefficients().size() == 4);
  CHECK(table.top() == doctest::Approx(1.0).epsilon(1e-13));
  for (double t : {0.1, 0.33, 0.77}) CHECK(table.newton_value(t) == doctest::Approx(cube(t)).epsilon(1e-13));
}

TEST_CASE("node polynomial") {
  const NodeSet n0(UniformMesh(2), 0);
  CHECK(node_polynomial(n0, 0, 0.25) == 0.0);
  CHECK(node_polynomial(n0, 0, 0.0) == -0.25);
  const NodeSet n1(UniformMesh(1), 1);
  CHECK(node_polynomial(n1, 0, 0.25) == doctest::Approx(0.046875).epsilon(1e-15));
}

TEST_CASE("interpolation error orders") {
  const std::vector<int> n4{4, 8, 16, 32};
  const auto recip = interpolation_error_order([](double t) { return 1.0 / (t + 1.0); }, 0, n4);
  CHECK_FALSE(recip.exact);
  CHECK(std::abs(recip.slope - 1.0) <= 0.2);

  const std::vector<int> n3{2, 4, 8};
  const auto sine = interpolation_error_order([](double t) { return std::sin(t); }, 1, n3);
  CHECK(std::abs(sine.slope - 3.0) <= 0.3);

  const auto poly = interpolation_error_order([](double t) { return 1.0 - 2.0 * t + t * t; }, 1, n3);
  CHECK(poly.exact);
}

TEST_CASE("projection property suite") {
  for (std::uint64_t seed : {default_seed, std::uint64_t{1}, std::uint64_t{99}}) {
    for (const auto& r : verify_projection(seed)) {
      INFO(r.name << ": " << r.detail);
      CHECK(r.passed);
    }
  }
}

TEST_CASE("lemma bounds on K'(phi)1") {
  for (const auto& r : verify_lemmas()) {
    INFO(r.name << ": " << r.detail);
    CHECK(r.passed);
  }
}
