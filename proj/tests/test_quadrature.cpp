#include "alemass/quadrature.hpp"

#include <doctest.h>

#include <cmath>

using namespace alemass;

TEST_CASE("sphere rule weights sum to the sphere volume") {
  for (int n : {6, 12, 24}) {
    const SphereRule rule = make_sphere_rule(n);
    CHECK(rule.size() == n * n * 2 * n);
    double sum = 0.0;
    for (int i = 0; i < rule.size(); ++i) sum += rule.weights[i];
    CHECK(std::abs(sum - kSphereVolume) <= 1e-12 * kSphereVolume);
    for (int i = 0; i < rule.size(); ++i) {
      CHECK(std::abs(rule.nodes.row(i).norm() - 1.0) <= 1e-14);
    }
  }
}

TEST_CASE("closed-form monomial values") {
  const double pi2 = kPi * kPi;
  CHECK(sphere_monomial_integral(0, 0, 0, 0) == doctest::Approx(2.0 * pi2).epsilon(1e-14));
  CHECK(sphere_monomial_integral(2, 0, 0, 0) == doctest::Approx(pi2 / 2.0).epsilon(1e-14));
  CHECK(sphere_monomial_integral(4, 0, 0, 0) == doctest::Approx(pi2 / 4.0).epsilon(1e-14));
  CHECK(sphere_monomial_integral(2, 2, 0, 0) == doctest::Approx(pi2 / 12.0).epsilon(1e-14));
  CHECK(sphere_monomial_integral(1, 0, 0, 0) == 0.0);
  CHECK(sphere_monomial_integral(1, 1, 2, 0) == 0.0);
}

TEST_CASE("rule integrates every degree <= 4 monomial exactly") {
  const SphereRule rule = make_sphere_rule(8);
  for (int a = 0; a <= 4; ++a) {
    for (int b = 0; a + b <= 4; ++b) {
      for (int c = 0; a + b + c <= 4; ++c) {
        for (int d = 0; a + b + c + d <= 4; ++d) {
          double acc = 0.0;
          for (int i = 0; i < rule.size(); ++i) {
            const auto n = rule.nodes.row(i);
            acc += rule.weights[i] * std::pow(n[0], a) * std::pow(n[1], b) *
                   std::pow(n[2], c) * std::pow(n[3], d);
          }
          CHECK(std::abs(acc - sphere_monomial_integral(a, b, c, d)) <= 1e-10);
        }
      }
    }
  }
}

TEST_CASE("rule converges on a transcendental integrand") {
  auto integrate = [](const SphereRule& rule) {
    double acc = 0.0;
    for (int i = 0; i < rule.size(); ++i) {
      acc += rule.weights[i] * std::exp(rule.nodes(i, 0) + 0.5 * rule.nodes(i, 2));
    }
    return acc;
  };
  const double reference = integrate(make_sphere_rule(40));
  CHECK(std::abs(integrate(make_sphere_rule(12)) - reference) <= 1e-10 * std::abs(reference));
}

TEST_CASE("corrupted rules are rejected") {
  SphereRule rule = make_sphere_rule(6);
  rule.weights[0] += 1e-6;
  CHECK_THROWS_AS(check_sphere_rule(rule), std::runtime_error);
}

TEST_CASE("gauss-legendre nodes reproduce known values") {
  std::vector<double> nodes, weights;
  gauss_legendre(2, nodes, weights);
  REQUIRE(nodes.size() == 2);
  CHECK(nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(weights[0] == doctest::Approx(1.0).epsilon(1e-14));
  gauss_legendre(64, nodes, weights);
  double sum = 0.0;
  for (double w : weights) sum += w;
  CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
}
