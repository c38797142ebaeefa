#include "alemass/moser.hpp"

#include "alemass/catalog.hpp"
#include "alemass/fitting.hpp"
#include "alemass/metric_field.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace alemass {

namespace {

// C^2 transition, 0 below s = 0 and 1 above s = 1.
double smoothstep5(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  return s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

double cutoff(const PerturbationSpec& spec, double rho) {
  return smoothstep5((rho - (spec.safety_radius - 1.5)) / 0.5);
}

Vec4 solve_moser(const PerturbationSpec& spec, const Vec4& x, double t) {
  const Mat4 w0 = standard_symplectic_matrix();
  const Mat4 w = spec.omega.eval(x);
  const Vec4 theta = spec.theta.eval(x);
  const Mat4 wt = w0 + t * (w - w0);
  const Vec4 field = wt.partialPivLu().solve(theta);
  const double residual = (wt * field - theta).cwiseAbs().maxCoeff();
  const double scale = std::max(theta.cwiseAbs().maxCoeff(), 1e-3);
  if (!(residual <= 1e-12 * scale)) {
    std::ostringstream msg;
    msg << spec.label << ": Moser solve residual " << residual << " at rho = " << x.norm()
        << ", t = " << t << " (interpolated form too close to degenerate)";
    throw std::runtime_error(msg.str());
  }
  return field;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double s = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    out.push_back(lo * std::pow(hi / lo, s));
  }
  return out;
}

// Small generic direction set; avoids the axes-only blind spots.
const std::vector<Vec4>& probe_directions() {
  static const std::vector<Vec4> dirs = [] {
    std::vector<Vec4> d;
    d.push_back(Vec4(1, 0, 0, 0));
    d.push_back(Vec4(0, 0, 1, 0));
    d.push_back(Vec4(0.5, 0.5, 0.5, 0.5));
    d.push_back(Vec4(0.5, -0.5, 0.5, -0.5));
    d.push_back(Vec4(1, 2, -1, 0.5).normalized());
    d.push_back(Vec4(0.3, -0.7, 0.2, 0.6).normalized());
    return d;
  }();
  return dirs;
}

}  // namespace

SpecDiagnostics validate_spec(const PerturbationSpec& spec, double closure_tol) {
  spec.chart.validate();
  if (!(spec.working_radius >= spec.chart.inner_radius)) {
    throw std::invalid_argument(spec.label + ": working radius below the chart floor");
  }
  if (!(spec.safety_radius >= spec.working_radius + 1.0 - 1e-12)) {
    throw std::invalid_argument(spec.label + ": safety radius must be >= working radius + 1");
  }

  const Mat4 w0 = standard_symplectic_matrix();
  SpecDiagnostics diag;

  const auto radii = log_spaced(spec.working_radius, 200.0 * spec.working_radius, 10);
  for (double rho : radii) {
    for (const Vec4& n : audit_directions()) {
      const Vec4 x = rho * n;
      const Mat4 dev = spec.omega.eval(x) - w0;
      diag.sup_deviation = std::max(diag.sup_deviation, two_form_norm(dev));
    }
  }
  if (!(diag.sup_deviation < 1.0 / std::sqrt(2.0))) {
    std::ostringstream msg;
    msg << spec.label << ": |omega - omega0| reaches " << diag.sup_deviation
        << " >= 1/sqrt(2); nondegeneracy of the interpolated family is not certified";
    throw std::invalid_argument(msg.str());
  }

  for (double rho : radii) {
    for (const Vec4& n : probe_directions()) {
      const Vec4 x = rho * n;
      const Mat4 dev = spec.omega.eval(x) - w0;
      const double defect = (fd_exterior_derivative(spec.theta, x) - dev).cwiseAbs().maxCoeff();
      diag.primitive_defect = std::max(diag.primitive_defect, defect);
    }
  }
  if (!(diag.primitive_defect <= closure_tol)) {
    std::ostringstream msg;
    msg << spec.label << ": d theta fails to match omega - omega0 (defect "
        << diag.primitive_defect << " > " << closure_tol << ")";
    throw std::invalid_argument(msg.str());
  }

  const auto field_radii =
      log_spaced(std::max(spec.safety_radius - 1.0, spec.chart.inner_radius),
                 200.0 * spec.working_radius, 10);
  for (double rho : field_radii) {
    for (const Vec4& n : probe_directions()) {
      for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const Vec4 x = rho * n;
        diag.sup_field = std::max(diag.sup_field, solve_moser(spec, x, t).norm());
      }
    }
  }
  if (!(diag.sup_field < 1.0)) {
    std::ostringstream msg;
    msg << spec.label << ": sampled |X_t| reaches " << diag.sup_field
        << " >= 1 at the safety radius; enlarge safety_radius";
    throw std::invalid_argument(msg.str());
  }
  return diag;
}

double find_safety_radius(const PerturbationSpec& spec) {
  for (double c = spec.working_radius + 1.0; c <= spec.working_radius + 40.0; c += 0.5) {
    double sup = 0.0;
    for (double offset : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
      const double rho = c - 1.0 + offset;
      for (const Vec4& n : probe_directions()) {
        for (double t : {0.0, 0.5, 1.0}) {
          sup = std::max(sup, solve_moser(spec, rho * n, t).norm());
        }
      }
    }
    if (sup < 0.9) return c;
  }
  throw std::runtime_error(spec.label + ": no admissible safety radius within 40 of b");
}

Vec4 moser_field(const PerturbationSpec& spec, const Vec4& x, double t) {
  const double rho = x.norm();
  const double phi = cutoff(spec, rho);
  if (phi == 0.0) return Vec4::Zero();
  return phi * solve_moser(spec, x, t);
}

FlowSample integrate_flow(const PerturbationSpec& spec, const Vec4& x0, int steps, double t0,
                          double t1) {
  if (steps < 1) throw std::invalid_argument("integrate_flow: steps must be >= 1");
  const double h = (t1 - t0) / steps;
  Vec4 x = x0;
  for (int i = 0; i < steps; ++i) {
    const double t = t0 + i * h;
    const Vec4 k1 = moser_field(spec, x, t);
    const Vec4 k2 = moser_field(spec, x + 0.5 * h * k1, t + 0.5 * h);
    const Vec4 k3 = moser_field(spec, x + 0.5 * h * k2, t + 0.5 * h);
    const Vec4 k4 = moser_field(spec, x + h * k3, t + h);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!((x - x0).norm() < 1.0) || !(x.norm() >= spec.safety_radius - 1.0)) {
      std::ostringstream msg;
      msg << spec.label << ": trajectory from rho = " << x0.norm()
          << " exits the certified region at t = " << t + h;
      throw std::runtime_error(msg.str());
    }
  }
  FlowSample out;
  out.start = x0;
  out.end = x;
  out.displacement = (x - x0).norm();
  return out;
}

Mat4 flow_jacobian(const PerturbationSpec& spec, const Vec4& x0, int steps) {
  const double h = 1e-4 * std::max(x0.norm(), 1.0);
  Mat4 jac;
  for (int j = 0; j < 4; ++j) {
    const Vec4 dx = h * Vec4::Unit(j);
    const Vec4 plus = integrate_flow(spec, x0 + dx, steps).end;
    const Vec4 minus = integrate_flow(spec, x0 - dx, steps).end;
    jac.col(j) = (plus - minus) / (2.0 * h);
  }
  return jac;
}

double pullback_residual(const PerturbationSpec& spec, const std::vector<Vec4>& seeds,
                         int steps) {
  const Mat4 w0 = standard_symplectic_matrix();
  double sup = 0.0;
  for (const Vec4& x : seeds) {
    const Vec4 end = integrate_flow(spec, x, steps).end;
    const Mat4 jac = flow_jacobian(spec, x, steps);
    if (!(jac.determinant() > 0.0)) {
      throw std::runtime_error(spec.label + ": flow differential is not orientation preserving");
    }
    const Mat4 residual = jac.transpose() * spec.omega.eval(end) * jac - w0;
    sup = std::max(sup, residual.cwiseAbs().maxCoeff());
  }
  return sup;
}

MoserFalloff falloff_fit(const PerturbationSpec& spec, double rho_min, double rho_max,
                         int seed_count, int steps) {
  if (!(rho_min >= spec.safety_radius)) {
    throw std::invalid_argument(spec.label + ": falloff seeds must start at the safety radius");
  }
  if (!(rho_max >= rho_min * 31.62) || seed_count < 4) {
    throw std::invalid_argument(spec.label + ": falloff fit needs >= 1.5 decades and 4 seeds");
  }
  const Vec4 dir = Vec4(0.5, 0.5, 0.5, 0.5);
  MoserFalloff out;
  out.radii = log_spaced(rho_min, rho_max, seed_count);
  for (double rho : out.radii) {
    const Vec4 x = rho * dir;
    out.displacements.push_back(integrate_flow(spec, x, steps).displacement);
    const Mat4 jac = flow_jacobian(spec, x, steps);
    out.jacobian_devs.push_back((jac - Mat4::Identity()).cwiseAbs().maxCoeff());
  }
  const SlopeFit disp = loglog_slope(out.radii, out.displacements);
  const SlopeFit jac = loglog_slope(out.radii, out.jacobian_devs, 1e-10);
  out.displacement_slope = disp.slope;
  out.jacobian_slope = jac.slope;
  out.at_noise_floor = disp.at_noise_floor || jac.at_noise_floor;
  return out;
}

double convergence_order(const PerturbationSpec& spec, const Vec4& x0, int coarsest_steps,
                         int halvings) {
  if (halvings < 2) throw std::invalid_argument("convergence_order: need >= 2 halvings");
  std::vector<double> diffs;
  int steps = coarsest_steps;
  Vec4 prev = integrate_flow(spec, x0, steps).end;
  for (int k = 0; k < halvings; ++k) {
    steps *= 2;
    const Vec4 next = integrate_flow(spec, x0, steps).end;
    diffs.push_back((next - prev).norm());
    prev = next;
  }
  double sum = 0.0;
  int used = 0;
  for (std::size_t k = 0; k + 1 < diffs.size(); ++k) {
    // Accumulated rounding over the step count sits near 1e-14 |x|.
    if (diffs[k + 1] < 1e-13 || diffs[k] < 1e-13) continue;
    sum += std::log2(diffs[k] / diffs[k + 1]);
    ++used;
  }
  if (used == 0) throw std::runtime_error("convergence_order: differences at round-off floor");
  return sum / used;
}

OneFormField radial_primitive(const TwoFormField& delta_omega, double rho0,
                              const std::vector<double>& audit_radii, double simpson_tol,
                              double audit_tol) {
  if (!(rho0 > 0.0)) throw std::invalid_argument("radial_primitive: rho0 must be positive");
  auto eval = [delta_omega, rho0, simpson_tol](const Vec4& x) {
    const double rho = x.norm();
    const Vec4 n = x / rho;
    Vec4 psi;
    for (int k = 0; k < 4; ++k) {
      auto component = [&](double r) {
        const Mat4 w = delta_omega.eval(r * n);
        return r * (n.transpose() * w)(k);
      };
      psi(k) = adaptive_simpson(component, rho0, rho, simpson_tol) / rho;
    }
    return psi;
  };
  OneFormField psi{"radial-primitive(" + delta_omega.label + ")", eval};

  for (double rho : audit_radii) {
    for (const Vec4& n : probe_directions()) {
      const Vec4 x = rho * n;
      const Mat4 defect = fd_exterior_derivative(psi, x) - delta_omega.eval(x);
      const double residual = defect.cwiseAbs().maxCoeff();
      if (!(residual <= audit_tol)) {
        std::ostringstream msg;
        msg << "radial_primitive(" << delta_omega.label << "): d psi misses delta omega by "
            << residual << " at rho = " << rho
            << "; the leftover is a nonradial S^3 class and would need the beta-correction "
               "step, which is outside this lab's scope";
        throw std::runtime_error(msg.str());
      }
    }
  }
  return psi;
}

PerturbationSpec flat_moser_spec() {
  PerturbationSpec spec;
  spec.label = "flat";
  spec.chart = AsymptoticChart{0.5, 1, 2.0};
  spec.working_radius = 2.0;
  spec.safety_radius = 3.0;
  spec.declared_epsilon = 2.0;
  const Mat4 w0 = standard_symplectic_matrix();
  spec.omega = TwoFormField{"omega0", [w0](const Vec4&) { return w0; }, true};
  spec.theta = OneFormField{"zero", [](const Vec4&) { return Vec4::Zero(); }};
  return spec;
}

PerturbationSpec burns_moser_spec(double c, double b) {
  if (!(c > 0.0)) throw std::invalid_argument("burns_moser_spec: c must be positive");
  const RadialKahlerPotential pot = burns_potential(c);
  PerturbationSpec spec;
  spec.label = "burns(c=" + std::to_string(c) + ")";
  spec.working_radius = std::max(b, 1.6 * std::sqrt(std::max(c, 1.0)));
  spec.safety_radius = spec.working_radius + 1.0;
  spec.chart = AsymptoticChart{0.75 * spec.working_radius, 1, 2.0};
  // theta = (c/2) sigma_hopf decays one power slower than the metric.
  spec.declared_epsilon = 1.0;
  spec.omega = TwoFormField{spec.label + " form",
                            [pot](const Vec4& x) { return kahler_form(pot, x); }, true};
  // theta = (c / 2t) m; d theta equals the Fubini-Study pullback deviation.
  spec.theta = OneFormField{spec.label + " primitive", [c](const Vec4& x) {
                              const double t = x.squaredNorm();
                              return Vec4((c / (2.0 * t)) * angular_one_form(x));
                            }};
  return spec;
}

TwoFormField hopf_delta(double amplitude, double epsilon) {
  auto eval = [amplitude, epsilon](const Vec4& x) {
    const double rho = x.norm();
    const double t = rho * rho;
    const Vec4 n = x / rho;
    const Vec4 m = angular_one_form(x);
    const Vec4 sigma = m / t;
    const double g = amplitude * std::pow(rho, 1.0 - epsilon);
    const double dg = amplitude * (1.0 - epsilon) * std::pow(rho, -epsilon);
    const Mat4 w0 = standard_symplectic_matrix();
    const Mat4 dsigma =
        (2.0 / t) * w0 - (2.0 / (t * t)) * (x * m.transpose() - m * x.transpose());
    return Mat4(dg * (n * sigma.transpose() - sigma * n.transpose()) + g * dsigma);
  };
  return TwoFormField{"hopf-delta", eval, true};
}

PerturbationSpec hopf_moser_spec(double amplitude, double epsilon, double b) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("hopf_moser_spec: epsilon must be positive");
  PerturbationSpec spec;
  spec.label = "hopf(A=" + std::to_string(amplitude) + ",eps=" + std::to_string(epsilon) + ")";
  spec.working_radius = b;
  spec.safety_radius = b + 1.0;
  spec.chart = AsymptoticChart{0.5 * b, 1, epsilon};
  spec.declared_epsilon = epsilon;
  const TwoFormField delta = hopf_delta(amplitude, epsilon);
  const Mat4 w0 = standard_symplectic_matrix();
  spec.omega = TwoFormField{spec.label + " form",
                            [delta, w0](const Vec4& x) { return Mat4(w0 + delta.eval(x)); }, true};
  spec.theta = OneFormField{spec.label + " primitive", [amplitude, epsilon](const Vec4& x) {
                              const double rho = x.norm();
                              return Vec4(amplitude * std::pow(rho, 1.0 - epsilon) *
                                          sigma_hopf(x));
                            }};
  return spec;
}

TwoFormField radial_exact_delta(double amplitude, double epsilon) {
  auto eval = [amplitude, epsilon](const Vec4& x) {
    const double rho = x.norm();
    const Vec4 n = x / rho;
    const Vec4 sigma = sigma_closed(x);
    const double dg = amplitude * (1.0 - epsilon) * std::pow(rho, -epsilon);
    return Mat4(dg * (n * sigma.transpose() - sigma * n.transpose()));
  };
  return TwoFormField{"radial-exact-delta", eval, true};
}

Vec4 radial_exact_psi(double amplitude, double epsilon, double rho0, const Vec4& x) {
  const double rho = x.norm();
  const double g = amplitude * std::pow(rho, 1.0 - epsilon);
  const double g0 = amplitude * std::pow(rho0, 1.0 - epsilon);
  return (g - g0) * sigma_closed(x);
}

}  // namespace alemass
