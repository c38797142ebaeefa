#pragma once

#include "alemass/metric_field.hpp"
#include "alemass/quadrature.hpp"
#include "alemass/types.hpp"

#include <functional>
#include <string>
#include <vector>

namespace alemass {

// Cohomological mass data for an asymptotically flat Kahler surface:
//   mass = -(1/3 pi) <c1, [omega]> + (1/12 pi^2) integral of s.
double mass_from_cohomology(double chern_pairing, double scalar_integral);

struct BlowupModel {
  std::string label;
  double chern_pairing = 0.0;
  double scalar_integral = 0.0;
};

// AE blow-up model: the Chern pairing is minus the total exceptional area.
BlowupModel ae_blowup_model(const std::vector<double>& exceptional_areas,
                            double scalar_integral, const std::string& label);
double mass_from_cohomology(const BlowupModel& model);

// Compact divisor with multiplicity, for the lower-bound inequality.
struct DivisorData {
  std::string label;
  int multiplicity = 1;
  double volume = 0.0;
};

// mass >= (1/3 pi) sum_j n_j Vol(D_j); gap = mass - lower_bound, equality is
// declared when |gap| <= eq_tol.
struct PenroseResult {
  double lower_bound = 0.0;
  double gap = 0.0;
  bool satisfied = false;
  bool equality = false;
};
PenroseResult penrose_check(double mass, const std::vector<DivisorData>& divisors,
                            double eq_tol = 1e-6);

// integral of s dmu over the end, per fundamental domain.  The shell profile
// F(rho) = rho^3 / |Gamma| * sum_i w_i s sqrt(det g) is Simpson-integrated on
// [r_min, r_max]; the tail is closed with a fitted power law (decay > 1
// required unless the profile sits at the noise floor).
struct ScalarVolume {
  double value = 0.0;
  double interior = 0.0;
  double tail = 0.0;
  double tail_decay = 0.0;
  bool noise_floored = false;
};

ScalarVolume scalar_volume_integral(const MetricField& field, double r_min, double r_max,
                                    const SphereRule& rule, double tol = 1e-8);

// Synthetic profile variant: explicit scalar and volume-density callables.
ScalarVolume scalar_volume_integral(const std::function<double(const Vec4&)>& scalar,
                                    const std::function<double(const Vec4&)>& density,
                                    const AsymptoticChart& chart, double r_min, double r_max,
                                    const SphereRule& rule, double tol = 1e-8);

// Agreement record between a flux mass and a cohomological mass.  Relative
// tolerance rules except near zero, where the absolute floor takes over.
struct Crosscheck {
  double computed = 0.0;
  double reference = 0.0;
  double abs_error = 0.0;
  double rel_error = 0.0;
  bool abs_branch = false;
  bool pass = false;
};
Crosscheck crosscheck_mass(double computed, double reference, double rel_tol = 1e-2,
                           double abs_floor = 1e-4);

}  // namespace alemass
