#pragma once

#include "alemass/metric_field.hpp"
#include "alemass/quadrature.hpp"

#include <vector>

namespace alemass {

// Boundary integral at one radius:
//   (1 / (12 pi^2 |Gamma|)) * sum_i w_i rho^3 [g_kl,k - g_kk,l](rho n_i) n_i^l.
// The division by |Gamma| is the final operation so the quotient law
// mass(|Gamma|=q) = mass(|Gamma|=1)/q holds exactly as computed.
// Requires rho >= 1.5 * chart.inner_radius so FD stencils stay in the chart.
double mass_integrand_at(const MetricField& field, const SphereRule& rule, double rho);

// Default radius schedule a * 2^k, k = 3..10: spans two decades.
std::vector<double> default_radius_schedule(const AsymptoticChart& chart, int k_min = 3,
                                            int k_max = 10);

struct MassEstimate {
  std::vector<double> radii;
  std::vector<double> values;        // boundary integral per radius
  double extrapolated_mass = 0.0;
  double fitted_decay = 0.0;         // kappa
  double fit_residual = 0.0;         // absolute RMS of the power fit
  bool two_term = false;
  bool constant_samples = false;
  bool non_convergent = false;       // kappa <= 0.05 with a real trend
  bool non_monotone_warning = false; // noise-dominated samples
  bool trend_warning = false;        // |m_inf - last| > |first - last|
  int group_order = 1;
};

// Evaluates the boundary integral along the schedule and extrapolates
// m(rho) = m_inf + A rho^{-kappa}, kappa initialized at the chart epsilon.  A
// second term B rho^{-kappa-1} enters only when the one-term residual exceeds
// 1e-6.
MassEstimate chrusciel_mass(const MetricField& field, const SphereRule& rule,
                            const std::vector<double>& radii);

MassEstimate chrusciel_mass(const MetricField& field, const SphereRule& rule);

}  // namespace alemass
