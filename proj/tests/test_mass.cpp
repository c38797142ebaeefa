#include "alemass/catalog.hpp"
#include "alemass/mass.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace alemass;

namespace {

const SphereRule& rule16() {
  static const SphereRule rule = make_sphere_rule(16);
  return rule;
}

// Pointwise flux density [g_kl,k - g_kk,l] n^l at a node, before averaging.
double flux_density(const MetricField& field, const Vec4& x) {
  const Vec4 n = x.normalized();
  const MetricDerivatives dg = metric_derivatives(field, x);
  double acc = 0.0;
  for (int l = 0; l < 4; ++l) {
    double term = 0.0;
    for (int k = 0; k < 4; ++k) term += dg.d[k](k, l) - dg.d[l](k, k);
    acc += term * n[l];
  }
  return acc;
}

}  // namespace

TEST_CASE("conformal boundary integral equals c at every radius") {
  for (double c : {0.3, 0.7, 1.5}) {
    const CatalogMetric cm = make_catalog_metric("conformal:c=" + std::to_string(c));
    const MassEstimate est = chrusciel_mass(cm.field, rule16());
    for (double v : est.values) CHECK(std::abs(v - c) <= 1e-12 * c);
    CHECK(std::abs(est.extrapolated_mass - c) <= 1e-12 * c);
    CHECK(est.constant_samples);
  }
}

TEST_CASE("conformal flux density is constant on spheres") {
  const CatalogMetric cm = make_catalog_metric("conformal:c=0.7");
  const double rho = 20.0;
  // closed form: [g_kl,k - g_kk,l] n^l = 6 c rho^-3
  const double expect = 6.0 * 0.7 * std::pow(rho, -3.0);
  for (const Vec4& n : audit_directions()) {
    CHECK(std::abs(flux_density(cm.field, rho * n) - expect) <= 1e-8 * expect);
  }
}

TEST_CASE("flat space has zero mass, also under free quotients") {
  for (const char* quotient : {"", "q=2,p=1", "q=4,p=1"}) {
    const CatalogMetric cm = make_catalog_metric("flat", quotient);
    const MassEstimate est = chrusciel_mass(cm.field, rule16());
    CHECK(std::abs(est.extrapolated_mass) <= 1e-9);
    for (double v : est.values) CHECK(std::abs(v) <= 1e-12);
  }
}

TEST_CASE("quotient law is exact as computed") {
  const MassEstimate whole =
      chrusciel_mass(make_catalog_metric("conformal:c=0.7").field, rule16());
  for (long long q : {2LL, 4LL}) {
    const CatalogMetric cm =
        make_catalog_metric("conformal:c=0.7", "q=" + std::to_string(q) + ",p=1");
    const MassEstimate quotient = chrusciel_mass(cm.field, rule16());
    REQUIRE(quotient.values.size() == whole.values.size());
    for (std::size_t i = 0; i < whole.values.size(); ++i) {
      // bitwise: division by the group order is the final operation
      CHECK(quotient.values[i] == whole.values[i] / static_cast<double>(q));
    }
    CHECK(quotient.extrapolated_mass == whole.extrapolated_mass / static_cast<double>(q));
    CHECK(quotient.group_order == q);
  }
}

TEST_CASE("eguchi-hanson mass vanishes to schedule accuracy") {
  for (double a : {1.0, 1.3}) {
    const CatalogMetric cm = make_catalog_metric("eguchi_hanson:a=" + std::to_string(a));
    const MassEstimate est = chrusciel_mass(cm.field, rule16());
    CHECK(std::abs(est.extrapolated_mass) <= 1e-4 * a * a);
    CHECK(!est.non_convergent);
  }
}

TEST_CASE("burns mass is one third of the parameter") {
  for (double c : {0.25, 0.5}) {
    const CatalogMetric cm = make_catalog_metric("burns:c=" + std::to_string(c));
    const MassEstimate est = chrusciel_mass(cm.field, rule16());
    CHECK(std::abs(est.extrapolated_mass - c / 3.0) <= 1e-3 * (c / 3.0));
    CHECK(std::abs(cm.exact_mass - c / 3.0) <= 1e-15);
  }
}

TEST_CASE("burns quotient divides the mass") {
  const CatalogMetric cm = make_catalog_metric("burns:c=0.5", "q=2,p=1");
  const MassEstimate est = chrusciel_mass(cm.field, rule16());
  CHECK(std::abs(est.extrapolated_mass - 0.5 / 6.0) <= 1e-3 * (0.5 / 6.0));
}

TEST_CASE("sub-threshold falloff yields no limit") {
  const CatalogMetric cm = make_catalog_metric("slowfall:c=0.4");
  const MassEstimate est = chrusciel_mass(cm.field, rule16());
  CHECK(est.non_convergent);
}

TEST_CASE("the boundary integral is rotation invariant") {
  const CatalogMetric cm = make_catalog_metric("conformal:c=0.9");
  const MetricField rotated = rotated_field(cm.field, lens_rotation(12, 5));
  for (double rho : {8.0, 32.0}) {
    const double a = mass_integrand_at(cm.field, rule16(), rho);
    const double b = mass_integrand_at(rotated, rule16(), rho);
    CHECK(std::abs(a - b) <= 1e-12 * std::max(std::abs(a), 1.0));
  }
}

TEST_CASE("integrand rejects radii too close to the chart floor") {
  const CatalogMetric cm = make_catalog_metric("conformal:c=0.5");
  CHECK_THROWS_AS(mass_integrand_at(cm.field, rule16(), 1.2), std::domain_error);
}

TEST_CASE("schedule spans two decades by default") {
  const AsymptoticChart chart{1.0, 1, 1.0};
  const std::vector<double> radii = default_radius_schedule(chart);
  REQUIRE(radii.size() == 8);
  CHECK(radii.front() == 8.0);
  CHECK(radii.back() == 1024.0);
  CHECK_THROWS_AS(chrusciel_mass(make_catalog_metric("flat").field, rule16(), {8.0, 16.0}),
                  std::invalid_argument);
}
