#include "alemass/mass.hpp"

#include "alemass/fitting.hpp"

#include <cmath>
#include <stdexcept>

namespace alemass {

double mass_integrand_at(const MetricField& field, const SphereRule& rule, double rho) {
  field.chart.validate();
  if (!(rho >= 1.5 * field.chart.inner_radius))
    throw std::domain_error("mass_integrand_at: rho=" + std::to_string(rho) +
                            " below 1.5 * inner radius");
  const double rho3 = rho * rho * rho;
  std::vector<double> terms(static_cast<std::size_t>(rule.size()));
  for (int i = 0; i < rule.size(); ++i) {
    const Vec4 n = rule.nodes.row(i).transpose();
    const MetricDerivatives dg = metric_derivatives(field, rho * n);
    double node = 0.0;
    for (int l = 0; l < 4; ++l) {
      double div_term = 0.0, trace_term = 0.0;
      for (int k = 0; k < 4; ++k) {
        div_term += dg.d[k](k, l);
        trace_term += dg.d[l](k, k);
      }
      node += (div_term - trace_term) * n(l);
    }
    terms[static_cast<std::size_t>(i)] = rule.weights(i) * rho3 * node;
  }
  const double cover_value = kMassNormalization * pairwise_sum(terms);
  return cover_value / static_cast<double>(field.chart.group_order);
}

std::vector<double> default_radius_schedule(const AsymptoticChart& chart, int k_min, int k_max) {
  chart.validate();
  if (k_min < 1 || k_max <= k_min)
    throw std::invalid_argument("default_radius_schedule: need 1 <= k_min < k_max");
  std::vector<double> radii;
  for (int k = k_min; k <= k_max; ++k)
    radii.push_back(chart.inner_radius * std::pow(2.0, k));
  return radii;
}

MassEstimate chrusciel_mass(const MetricField& field, const SphereRule& rule,
                            const std::vector<double>& radii) {
  if (radii.size() < 4)
    throw std::invalid_argument("chrusciel_mass: need at least four radii");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1]))
      throw std::invalid_argument("chrusciel_mass: radii must increase");

  MassEstimate est;
  est.group_order = field.chart.group_order;
  est.radii = radii;
  est.values.reserve(radii.size());
  for (double rho : radii) est.values.push_back(mass_integrand_at(field, rule, rho));

  const PowerFit fit = fit_power_tail(est.radii, est.values, field.chart.falloff_epsilon);
  est.extrapolated_mass = fit.limit;
  est.fitted_decay = fit.kappa;
  est.fit_residual = fit.rms;
  est.two_term = fit.two_term;
  est.constant_samples = fit.constant;
  est.non_convergent = fit.non_convergent && !fit.constant;

  // Growing samples never extrapolate to a finite limit along this model.
  const double first = std::abs(est.values.front()), last = std::abs(est.values.back());
  if (!fit.constant && last > 2.0 * first && last > 1e-9) est.non_convergent = true;

  // Sign-flip count across successive differences flags noise domination.
  int flips = 0;
  for (std::size_t i = 2; i < est.values.size(); ++i) {
    const double d0 = est.values[i - 1] - est.values[i - 2];
    const double d1 = est.values[i] - est.values[i - 1];
    if (d0 * d1 < 0.0) ++flips;
  }
  est.non_monotone_warning = !fit.constant && flips * 2 >= static_cast<int>(est.values.size());

  const double span = std::abs(est.values.front() - est.values.back());
  est.trend_warning = !fit.constant &&
                      std::abs(est.extrapolated_mass - est.values.back()) > span + 1e-12;
  return est;
}

MassEstimate chrusciel_mass(const MetricField& field, const SphereRule& rule) {
  return chrusciel_mass(field, rule, default_radius_schedule(field.chart));
}

}  // namespace alemass
