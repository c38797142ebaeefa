#include "alemass/cohomass.hpp"

#include "alemass/fitting.hpp"

#include <cmath>
#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace alemass {

double mass_from_cohomology(double chern_pairing, double scalar_integral) {
  if (!std::isfinite(chern_pairing) || !std::isfinite(scalar_integral)) {
    throw std::invalid_argument("mass_from_cohomology: non-finite input");
  }
  return -chern_pairing / (3.0 * kPi) + kMassNormalization * scalar_integral;
}

BlowupModel ae_blowup_model(const std::vector<double>& exceptional_areas,
                            double scalar_integral, const std::string& label) {
  double total = 0.0;
  for (double area : exceptional_areas) {
    if (!(area > 0.0)) {
      throw std::invalid_argument(label + ": exceptional areas must be positive");
    }
    total += area;
  }
  return BlowupModel{label, -total, scalar_integral};
}

double mass_from_cohomology(const BlowupModel& model) {
  return mass_from_cohomology(model.chern_pairing, model.scalar_integral);
}

PenroseResult penrose_check(double mass, const std::vector<DivisorData>& divisors,
                            double eq_tol) {
  double weighted = 0.0;
  for (const DivisorData& d : divisors) {
    if (d.multiplicity < 1) {
      throw std::invalid_argument(d.label + ": divisor multiplicity must be >= 1");
    }
    if (!(d.volume > 0.0)) {
      throw std::invalid_argument(d.label + ": divisor volume must be positive");
    }
    weighted += d.multiplicity * d.volume;
  }
  PenroseResult out;
  out.lower_bound = weighted / (3.0 * kPi);
  out.gap = mass - out.lower_bound;
  out.satisfied = out.gap >= -eq_tol;
  out.equality = std::abs(out.gap) <= eq_tol;
  return out;
}

namespace {

ScalarVolume integrate_shells(const std::function<double(double)>& shell, double r_min,
                              double r_max, double tol) {
  if (!(r_max > r_min && r_min > 0.0)) {
    throw std::invalid_argument("scalar_volume_integral: need 0 < r_min < r_max");
  }
  ScalarVolume out;
  out.interior = adaptive_simpson(shell, r_min, r_max, tol);

  std::vector<double> radii, values;
  for (int i = 0; i < 6; ++i) {
    const double rho = r_max * std::pow(0.25, 1.0 - i / 5.0);
    radii.push_back(rho);
    values.push_back(std::abs(shell(rho)));
  }
  const double floor = 1e-12 * (1.0 + std::abs(out.interior));
  const double peak = *std::max_element(values.begin(), values.end());
  if (peak <= floor) {
    out.noise_floored = true;
    out.tail = 0.0;
  } else {
    const SlopeFit fit = loglog_slope(radii, values, floor);
    out.tail_decay = -fit.slope;
    if (!(out.tail_decay > 1.05)) {
      std::ostringstream msg;
      msg << "scalar_volume_integral: shell profile decays like rho^" << fit.slope
          << "; the end integral does not converge";
      throw std::runtime_error(msg.str());
    }
    out.tail = shell(r_max) * r_max / (out.tail_decay - 1.0);
  }
  out.value = out.interior + out.tail;
  return out;
}

}  // namespace

ScalarVolume scalar_volume_integral(const MetricField& field, double r_min, double r_max,
                                    const SphereRule& rule, double tol) {
  auto shell = [&](double rho) {
    std::vector<double> terms(static_cast<std::size_t>(rule.size()));
    for (int i = 0; i < rule.size(); ++i) {
      const Vec4 x = rho * Vec4(rule.nodes.row(i).transpose());
      const Mat4 g = eval_metric(field, x);
      const double s = scalar_curvature(field, x);
      terms[static_cast<std::size_t>(i)] = rule.weights[static_cast<std::size_t>(i)] * s * std::sqrt(g.determinant());
    }
    return rho * rho * rho * pairwise_sum(terms) / field.chart.group_order;
  };
  return integrate_shells(shell, r_min, r_max, tol);
}

ScalarVolume scalar_volume_integral(const std::function<double(const Vec4&)>& scalar,
                                    const std::function<double(const Vec4&)>& density,
                                    const AsymptoticChart& chart, double r_min, double r_max,
                                    const SphereRule& rule, double tol) {
  auto shell = [&](double rho) {
    std::vector<double> terms(static_cast<std::size_t>(rule.size()));
    for (int i = 0; i < rule.size(); ++i) {
      const Vec4 x = rho * Vec4(rule.nodes.row(i).transpose());
      terms[static_cast<std::size_t>(i)] = rule.weights[static_cast<std::size_t>(i)] * scalar(x) * density(x);
    }
    return rho * rho * rho * pairwise_sum(terms) / chart.group_order;
  };
  return integrate_shells(shell, r_min, r_max, tol);
}

Crosscheck crosscheck_mass(double computed, double reference, double rel_tol, double abs_floor) {
  Crosscheck out;
  out.computed = computed;
  out.reference = reference;
  out.abs_error = std::abs(computed - reference);
  const double scale = std::max(std::abs(computed), std::abs(reference));
  out.rel_error = scale > 0.0 ? out.abs_error / scale : 0.0;
  if (scale <= abs_floor / rel_tol) {
    out.abs_branch = true;
    out.pass = out.abs_error <= abs_floor;
  } else {
    out.pass = out.rel_error <= rel_tol;
  }
  return out;
}

}  // namespace alemass
