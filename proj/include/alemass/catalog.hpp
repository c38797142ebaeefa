#pragma once

#include "alemass/kahler.hpp"
#include "alemass/metric_field.hpp"

#include <optional>
#include <string>
#include <vector>

namespace alemass {

// A catalog entry: the field as configured (quotient included), plus the
// radial potential when the family is Kahler and the closed-form mass when
// one is known.  exact_mass already accounts for the quotient order.
struct CatalogMetric {
  std::string name;
  MetricField field;
  std::optional<RadialKahlerPotential> potential;
  double exact_mass = std::numeric_limits<double>::quiet_NaN();
  bool scalar_flat = false;
};

// Metric spec syntax:
//   flat
//   conformal:c=<real>            g = (1 + c rho^-2) delta, exact mass c
//   slowfall:c=<real>[,rate=<r>]  g = (1 + c rho^-rate) delta, sub-threshold control
//   burns:c=<real>                u = t + c log t, scalar-flat, mass c/3
//   eguchi_hanson:a=<real>        Ricci-flat ALE potential, mass 0
// Quotient modifier (separate argument): "q=<int>,p=<int>" declaring the
// cyclic group diag(zeta_q, zeta_q^p); the action must be free and the field
// invariant.  Scalar-flat entries are admitted only after the curvature gate
// |s| <= 1e-6 at 20 log-spaced radii.
CatalogMetric make_catalog_metric(const std::string& spec, const std::string& quotient = "",
                                  double inner_radius = 1.0);

// Real 4x4 rotation of the lens generator diag(zeta_q, zeta_q^p).
Mat4 lens_rotation(long long q, long long p);

struct CatalogEntryDoc {
  std::string pattern;
  std::string summary;
};
const std::vector<CatalogEntryDoc>& catalog_documentation();

// Named potentials, exposed for tests and the Moser lab.
RadialKahlerPotential flat_potential();
RadialKahlerPotential burns_potential(double c);
RadialKahlerPotential eguchi_hanson_potential(double a);

}  // namespace alemass
