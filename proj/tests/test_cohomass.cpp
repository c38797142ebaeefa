#include "alemass/catalog.hpp"
#include "alemass/cohomass.hpp"
#include "alemass/quadrature.hpp"
#include "alemass/types.hpp"

#include <doctest.h>

#include <cmath>

using namespace alemass;
using doctest::Contains;

TEST_CASE("cohomological mass formula") {
  // One exceptional sphere of area pi, zero scalar integral: mass = 1/3.
  CHECK(mass_from_cohomology(-kPi, 0.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  // Two spheres plus a scalar term of 12 pi^2 adds exactly 1.
  const BlowupModel model = ae_blowup_model({kPi, 2.0 * kPi}, 12.0 * kPi * kPi, "pair");
  CHECK(model.chern_pairing == doctest::Approx(-3.0 * kPi));
  CHECK(mass_from_cohomology(model) == doctest::Approx(2.0).epsilon(1e-14));
  // Linearity in both slots.
  CHECK(mass_from_cohomology(-2.0, 3.0) ==
        doctest::Approx(2.0 * mass_from_cohomology(-1.0, 1.5)).epsilon(1e-14));

  CHECK_THROWS_AS(ae_blowup_model({kPi, -1.0}, 0.0, "bad"), std::invalid_argument);
  CHECK_THROWS_AS(ae_blowup_model({0.0}, 0.0, "bad"), std::invalid_argument);
}

TEST_CASE("lower bound bookkeeping") {
  // Mass assembled from the same divisor data: the gap is exactly the scalar
  // term, and vanishing scalar integral gives equality.
  const std::vector<DivisorData> divisors{{"E", 1, kPi}};
  const double s_int = 12.0 * kPi * kPi * 0.25;
  const PenroseResult strict = penrose_check(mass_from_cohomology(-kPi, s_int), divisors);
  CHECK(strict.lower_bound == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(strict.gap == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(strict.satisfied);
  CHECK(!strict.equality);

  const PenroseResult eq = penrose_check(mass_from_cohomology(-kPi, 0.0), divisors);
  CHECK(eq.equality);
  CHECK(eq.satisfied);

  // Multiplicity scales the bound linearly.
  const PenroseResult doubled =
      penrose_check(mass_from_cohomology(-2.0 * kPi, 0.0), {{"E", 2, kPi}});
  CHECK(doubled.lower_bound == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(doubled.equality);

  const PenroseResult violated = penrose_check(0.1, divisors);
  CHECK(!violated.satisfied);
  CHECK(violated.gap < 0.0);

  CHECK_THROWS_AS(penrose_check(1.0, {{"E", 0, kPi}}), std::invalid_argument);
  CHECK_THROWS_AS(penrose_check(1.0, {{"E", 1, -1.0}}), std::invalid_argument);
}

TEST_CASE("synthetic scalar volume integral with a known value") {
  // s = rho^-6 with unit density: integral over the end from rho = 1 is
  // 2 pi^2 * int_1^inf rho^-3 drho = pi^2.  The shell profile is an exact
  // power law, so the fitted tail closes the truncation.
  const SphereRule rule = make_sphere_rule(8);
  const AsymptoticChart chart{1.0, 1, 1.0};
  const auto scalar = [](const Vec4& x) { return std::pow(x.norm(), -6.0); };
  const auto unit = [](const Vec4&) { return 1.0; };
  const ScalarVolume sv = scalar_volume_integral(scalar, unit, chart, 1.0, 50.0, rule, 1e-10);
  CHECK(sv.value == doctest::Approx(kPi * kPi).epsilon(1e-8));
  CHECK(sv.tail_decay == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(sv.tail > 0.0);
  CHECK(!sv.noise_floored);

  // Quotient order divides the per-domain integral.
  const AsymptoticChart z2{1.0, 2, 1.0};
  const ScalarVolume half = scalar_volume_integral(scalar, unit, z2, 1.0, 50.0, rule, 1e-10);
  CHECK(half.value == doctest::Approx(0.5 * kPi * kPi).epsilon(1e-8));
}

TEST_CASE("non-integrable scalar profile is rejected") {
  const SphereRule rule = make_sphere_rule(6);
  const AsymptoticChart chart{1.0, 1, 1.0};
  const auto scalar = [](const Vec4& x) { return std::pow(x.norm(), -3.0); };
  const auto unit = [](const Vec4&) { return 1.0; };
  CHECK_THROWS_WITH_AS(scalar_volume_integral(scalar, unit, chart, 1.0, 40.0, rule, 1e-8),
                       Contains("does not converge"), std::runtime_error);
  CHECK_THROWS_AS(scalar_volume_integral(scalar, unit, chart, 5.0, 2.0, rule, 1e-8),
                  std::invalid_argument);
}

TEST_CASE("vanishing scalar hits the noise floor") {
  const SphereRule rule = make_sphere_rule(6);
  const AsymptoticChart chart{1.0, 1, 1.0};
  const auto zero = [](const Vec4&) { return 0.0; };
  const auto unit = [](const Vec4&) { return 1.0; };
  const ScalarVolume sv = scalar_volume_integral(zero, unit, chart, 1.0, 20.0, rule, 1e-8);
  CHECK(sv.noise_floored);
  CHECK(sv.value == 0.0);
  CHECK(sv.tail == 0.0);
}

TEST_CASE("scalar-flat catalog metric integrates to numerical zero") {
  const CatalogMetric cm = make_catalog_metric("burns:c=0.5");
  REQUIRE(cm.scalar_flat);
  const SphereRule rule = make_sphere_rule(8);
  const ScalarVolume sv = scalar_volume_integral(cm.field, 1.5, 30.0, rule, 1e-8);
  CHECK(std::abs(sv.value) <= 1e-6);
}

TEST_CASE("crosscheck branches") {
  const Crosscheck rel_pass = crosscheck_mass(1.0, 1.005);
  CHECK(!rel_pass.abs_branch);
  CHECK(rel_pass.pass);
  CHECK(rel_pass.rel_error == doctest::Approx(0.005 / 1.005).epsilon(1e-10));

  const Crosscheck rel_fail = crosscheck_mass(1.0, 1.02);
  CHECK(!rel_fail.abs_branch);
  CHECK(!rel_fail.pass);

  // Near zero the relative test is meaningless; the absolute floor rules.
  const Crosscheck abs_pass = crosscheck_mass(5e-5, 0.0);
  CHECK(abs_pass.abs_branch);
  CHECK(abs_pass.pass);

  const Crosscheck abs_fail = crosscheck_mass(2e-4, 0.0);
  CHECK(abs_fail.abs_branch);
  CHECK(!abs_fail.pass);

  const Crosscheck both_zero = crosscheck_mass(0.0, 0.0);
  CHECK(both_zero.pass);
  CHECK(both_zero.rel_error == 0.0);
}
