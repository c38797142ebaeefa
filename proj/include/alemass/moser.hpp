#pragma once

#include "alemass/chart.hpp"
#include "alemass/forms.hpp"
#include "alemass/types.hpp"

#include <vector>

namespace alemass {

// Symplectic perturbation data on the chart: omega = omega0 + d theta with
// |omega - omega0| < 1/sqrt(2) for rho >= working_radius (the nondegeneracy
// gate), and |X_t| < 1 for rho >= safety_radius - 1 (the displacement trap).
struct PerturbationSpec {
  AsymptoticChart chart;
  std::string label;
  TwoFormField omega;
  OneFormField theta;
  double working_radius = 2.0;   // b
  double safety_radius = 3.0;    // c >= b + 1
  double declared_epsilon = 1.0;
};

struct SpecDiagnostics {
  double sup_deviation = 0.0;     // max |omega - omega0| sampled for rho >= b
  double primitive_defect = 0.0;  // max |d theta - (omega - omega0)| (FD)
  double sup_field = 0.0;         // max |X_t| sampled for rho >= c - 1
};

// Samples the gates over the audit grid; throws when any fails.
SpecDiagnostics validate_spec(const PerturbationSpec& spec, double closure_tol = 1e-6);

// Smallest c >= b + 1 (in steps of 0.5) with sampled sup |X_t| < 0.9.
double find_safety_radius(const PerturbationSpec& spec);

// Moser vector field: solves X .| omega_t = -theta, omega_t = omega0 +
// t (omega - omega0), then applies the C^2 smoothstep cutoff supported on
// [c - 1.5, c - 1].  Solve residual is checked against 1e-12 |theta|;
// <X, theta> = 0 holds to round-off by antisymmetry.
Vec4 moser_field(const PerturbationSpec& spec, const Vec4& x, double t);

struct FlowSample {
  Vec4 start;
  Vec4 end;
  double displacement = 0.0;
};

// Classic fixed-step RK4 for dx/dt = X_t(x) on [t0, t1].  Throws when the
// trajectory leaves the unit ball around its seed or drops below rho = c - 1.
FlowSample integrate_flow(const PerturbationSpec& spec, const Vec4& x0, int steps,
                          double t0 = 0.0, double t1 = 1.0);

// Flow differential by central differences of the endpoint map.
Mat4 flow_jacobian(const PerturbationSpec& spec, const Vec4& x0, int steps);

// sup over seeds of |(D Phi)^T omega(Phi(x)) D Phi - omega0|; also checks
// det D Phi > 0 at every seed.
double pullback_residual(const PerturbationSpec& spec, const std::vector<Vec4>& seeds,
                         int steps);

struct MoserFalloff {
  std::vector<double> radii;
  std::vector<double> displacements;
  std::vector<double> jacobian_devs;   // |D Phi - I|
  double displacement_slope = 0.0;     // expect about -epsilon
  double jacobian_slope = 0.0;         // expect about -1 - epsilon
  bool at_noise_floor = false;
};

// Seeds along a fixed direction over >= 1.5 decades of rho.
MoserFalloff falloff_fit(const PerturbationSpec& spec, double rho_min, double rho_max,
                         int seed_count, int steps);

// Measured RK4 order from successive step halvings of the endpoint.
double convergence_order(const PerturbationSpec& spec, const Vec4& x0, int coarsest_steps,
                         int halvings);

// psi(x) = integral over [rho0, rho] of the sphere-transported radial
// contraction of delta_omega; adaptive Simpson per ray to simpson_tol.  The
// construction is exact only for radially exact inputs: the FD audit
// d psi = delta_omega runs on the audit grid and a residual above audit_tol
// throws (the S^3 cohomology defect needs a beta-correction that is out of
// scope here).
OneFormField radial_primitive(const TwoFormField& delta_omega, double rho0,
                              const std::vector<double>& audit_radii,
                              double simpson_tol = 1e-10, double audit_tol = 1e-5);

// Catalog of perturbation specs.
PerturbationSpec flat_moser_spec();
PerturbationSpec burns_moser_spec(double c, double b = 2.0);
PerturbationSpec hopf_moser_spec(double amplitude, double epsilon, double b = 4.0);
// Radially exact family delta_omega = d(A rho^{1-eps} sigma_closed).
TwoFormField radial_exact_delta(double amplitude, double epsilon);
Vec4 radial_exact_psi(double amplitude, double epsilon, double rho0, const Vec4& x);
// d(A rho^{1-eps} sigma_hopf): closed but not radially exact (sigma_hopf is
// a contact form, not closed), so radial_primitive must reject it.
TwoFormField hopf_delta(double amplitude, double epsilon);

}  // namespace alemass
