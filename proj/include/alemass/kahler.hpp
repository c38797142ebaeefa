#pragma once

#include "alemass/metric_field.hpp"
#include "alemass/types.hpp"

#include <complex>
#include <functional>
#include <string>

namespace alemass {

// U(2)-invariant Kahler potential u(t), t = |z|^2, on C^2 aligned with the
// standard complex structure.  The Hermitian form is
//   h_{a b-bar} = u'(t) delta + u''(t) zbar_a z_b,
// equivalently the real metric G(x) = u'(t) I + u''(t) (x x^T + y y^T) with
// y = J0 x.  du/d2u are required; d3u/d4u enable analytic metric derivatives
// and analytic curvature.
struct RadialKahlerPotential {
  std::string label;
  std::function<double(double)> du;   // u'
  std::function<double(double)> d2u;  // u''
  std::function<double(double)> d3u;  // u''' (optional)
  std::function<double(double)> d4u;  // u'''' (optional)
  double domain_floor = 0.0;          // smallest admissible t
};

// Real 4x4 metric sample; throws when the Hermitian form is not positive
// definite at x (u' <= 0 or u' + t u'' <= 0).
Mat4 kahler_metric_from_potential(const RadialKahlerPotential& pot, const Vec4& x);

// Hermitian 2x2 matrix h_{a b-bar} at x, for cross-checks.
Eigen::Matrix2cd hermitian_form(const RadialKahlerPotential& pot, const Vec4& x);

// Kahler form omega = g(J0 ., .) as the antisymmetric matrix W = -G J0.
Mat4 kahler_form(const RadialKahlerPotential& pot, const Vec4& x);
Mat4 kahler_form_from_metric(const Mat4& g);

// Full field over the chart; analytic derivative suppliers are attached when
// d3u (and d4u for curvature) are present.
MetricField make_kahler_field(const RadialKahlerPotential& pot, const AsymptoticChart& chart,
                              const std::string& label);

// Symplectic area of the exceptional cycle for log-type radial potentials:
// the two-chart Hopf-section disk integral of (omega - omega0) at scale r.
// For u = t + c log t this is pi * c at every r.
double hopf_cycle_area(const RadialKahlerPotential& pot, double r, int disk_order = 24);

// r -> 0 Richardson extrapolation of hopf_cycle_area with an error estimate.
struct ExceptionalArea {
  double area = 0.0;
  double error_estimate = 0.0;
};
ExceptionalArea exceptional_area(const RadialKahlerPotential& pot, double r0 = 0.2,
                                 int levels = 2, int disk_order = 24);

}  // namespace alemass
