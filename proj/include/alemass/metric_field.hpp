#pragma once

#include "alemass/chart.hpp"
#include "alemass/types.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace alemass {

enum class DerivativeMode { Analytic, CentralDifference };

// d[l](j,k) = partial_l g_jk.
struct MetricDerivatives {
  std::array<Mat4, 4> d;
};

// d2[l][m](j,k) = partial_l partial_m g_jk, symmetric in (l, m).
struct MetricSecondDerivatives {
  std::array<std::array<Mat4, 4>, 4> d2;
};

// Riemannian metric in a single asymptotic chart.  eval must return a
// symmetric positive-definite matrix for |x| >= chart.inner_radius; dg and
// d2g, when present, are closed-form derivative suppliers used by the
// Analytic mode.
struct MetricField {
  AsymptoticChart chart;
  std::string label;
  DerivativeMode mode = DerivativeMode::CentralDifference;
  std::function<Mat4(const Vec4&)> g;
  std::function<MetricDerivatives(const Vec4&)> dg;          // optional
  std::function<MetricSecondDerivatives(const Vec4&)> d2g;   // optional
};

// Validated evaluation: inside-radius or non-finite points throw, asymmetric
// or non-positive-definite outputs throw.
Mat4 eval_metric(const MetricField& field, const Vec4& x);

// g_jk,l at x.  Analytic mode requires dg; central differences use the step
// h = max(rho * 1e-4, 1e-6) per coordinate.
MetricDerivatives metric_derivatives(const MetricField& field, const Vec4& x);

// Scalar curvature at x.  Uses d2g when supplied, otherwise central
// differences of the Christoffel symbols with step max(3e-5 * rho, 1e-6).
// The FD stencil must stay inside the chart.
double scalar_curvature(const MetricField& field, const Vec4& x);

struct FalloffReport {
  double slope_g = 0.0;       // fitted log-log slope of sup |g - delta|
  double slope_dg = 0.0;      // fitted slope of sup |dg|
  bool pass = false;
  bool at_noise_floor = false;
  std::vector<double> radii;
  std::vector<double> dev_g;
  std::vector<double> dev_dg;
};

// Sup-norm deviation slopes over nested spheres spanning >= 2 decades,
// checked against the chart's declared epsilon: pass needs
// slope_g <= -1 - eps + tol and slope_dg <= -2 - eps + tol.
FalloffReport verify_falloff(const MetricField& field, double slope_tol = 0.15,
                             int sphere_count = 12);

// Fixed deterministic direction set on S^3 used for audits: the 8 axis
// directions, the 16 half-diagonals and the 24 (e_i +- e_j)/sqrt(2).
const std::vector<Vec4>& audit_directions();

// Conjugated field g'(x) = R^T g(R x) R with derivative chain rules.
MetricField rotated_field(const MetricField& field, const Mat4& rotation);

// Max over audit points of |R^T g(R x) R - g(x)| for the rotation R; used to
// certify Gamma-invariance of quotient fields.
double invariance_defect(const MetricField& field, const Mat4& rotation,
                         const std::vector<double>& radii);

}  // namespace alemass
