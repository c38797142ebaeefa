#include "alemass/metric_field.hpp"

#include "alemass/fitting.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <stdexcept>

namespace alemass {

namespace {

void check_domain(const MetricField& field, const Vec4& x, double margin = 0.0) {
  require_finite(x, "eval_metric");
  const double rho = x.norm();
  if (rho < field.chart.inner_radius - margin)
    throw std::domain_error("MetricField '" + field.label + "': point at rho=" +
                            std::to_string(rho) + " is inside the chart radius " +
                            std::to_string(field.chart.inner_radius));
}

}  // namespace

Mat4 eval_metric(const MetricField& field, const Vec4& x) {
  if (!field.g) throw std::invalid_argument("MetricField: missing evaluator");
  check_domain(field, x);
  const Mat4 g = field.g(x);
  if (!g.allFinite())
    throw std::runtime_error("MetricField '" + field.label + "': non-finite metric sample");
  // Rounding-level asymmetry (conjugated fields) is symmetrized away; more
  // than that is an assembly bug.
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + g.cwiseAbs().maxCoeff()))
    throw std::runtime_error("MetricField '" + field.label + "': asymmetric metric sample");
  const Mat4 sym = 0.5 * (g + g.transpose());
  Eigen::LLT<Mat4> llt(sym);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("MetricField '" + field.label + "': metric not positive definite");
  return sym;
}

MetricDerivatives metric_derivatives(const MetricField& field, const Vec4& x) {
  check_domain(field, x);
  if (field.mode == DerivativeMode::Analytic) {
    if (!field.dg)
      throw std::invalid_argument("MetricField '" + field.label +
                                  "': analytic mode without a derivative supplier");
    return field.dg(x);
  }
  const double h = fd_step(x.norm());
  MetricDerivatives out;
  for (int l = 0; l < 4; ++l) {
    Vec4 xp = x, xm = x;
    xp(l) += h;
    xm(l) -= h;
    check_domain(field, xm);
    out.d[l] = (field.g(xp) - field.g(xm)) / (2.0 * h);
  }
  return out;
}

namespace {

// Christoffel symbols of the second kind; gamma[i](j,k) = Gamma^i_jk.
std::array<Mat4, 4> christoffel(const Mat4& ginv, const MetricDerivatives& dg) {
  std::array<Mat4, 4> gamma;
  for (int i = 0; i < 4; ++i) gamma[i].setZero();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        double s = 0.0;
        for (int l = 0; l < 4; ++l)
          s += ginv(i, l) * (dg.d[j](l, k) + dg.d[k](l, j) - dg.d[l](j, k));
        gamma[i](j, k) = 0.5 * s;
      }
  return gamma;
}

double scalar_from_derivatives(const Mat4& g, const MetricDerivatives& dg,
                               const std::array<std::array<Mat4, 4>, 4>& dgamma) {
  const Mat4 ginv = g.inverse();
  const auto gamma = christoffel(ginv, dg);
  Mat4 ricci = Mat4::Zero();
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) {
      double r = 0.0;
      for (int i = 0; i < 4; ++i) {
        r += dgamma[i][i](j, k) - dgamma[k][i](j, i);
        for (int p = 0; p < 4; ++p)
          r += gamma[i](i, p) * gamma[p](j, k) - gamma[i](k, p) * gamma[p](j, i);
      }
      ricci(j, k) = r;
    }
  double s = 0.0;
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) s += ginv(j, k) * ricci(j, k);
  return s;
}

}  // namespace

double scalar_curvature(const MetricField& field, const Vec4& x) {
  check_domain(field, x);
  const Mat4 g = eval_metric(field, x);

  if (field.d2g) {
    const MetricDerivatives dg = metric_derivatives(field, x);
    const MetricSecondDerivatives d2 = field.d2g(x);
    const Mat4 ginv = g.inverse();
    // dgamma[m][i](j,k) = partial_m Gamma^i_jk, assembled from d2g and dg.
    std::array<std::array<Mat4, 4>, 4> dgamma;
    std::array<Mat4, 4> dginv;
    for (int m = 0; m < 4; ++m) dginv[m] = -ginv * dg.d[m] * ginv;
    for (int m = 0; m < 4; ++m)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          for (int k = 0; k < 4; ++k) {
            double s = 0.0;
            for (int l = 0; l < 4; ++l) {
              s += dginv[m](i, l) * (dg.d[j](l, k) + dg.d[k](l, j) - dg.d[l](j, k));
              s += ginv(i, l) *
                   (d2.d2[m][j](l, k) + d2.d2[m][k](l, j) - d2.d2[m][l](j, k));
            }
            dgamma[m][i](j, k) = 0.5 * s;
          }
    return scalar_from_derivatives(g, dg, dgamma);
  }

  // FD of the Christoffel symbols; first derivatives of g at the stencil
  // points come from metric_derivatives (analytic when available).
  const double rho = x.norm();
  const double h = std::max(3e-5 * rho, 1e-6);
  const MetricDerivatives dg = metric_derivatives(field, x);
  std::array<std::array<Mat4, 4>, 4> dgamma;
  for (int m = 0; m < 4; ++m) {
    Vec4 xp = x, xm = x;
    xp(m) += h;
    xm(m) -= h;
    check_domain(field, xm);
    const Mat4 gp_inv = eval_metric(field, xp).inverse();
    const Mat4 gm_inv = eval_metric(field, xm).inverse();
    const auto gp = christoffel(gp_inv, metric_derivatives(field, xp));
    const auto gm = christoffel(gm_inv, metric_derivatives(field, xm));
    for (int i = 0; i < 4; ++i) dgamma[m][i] = (gp[i] - gm[i]) / (2.0 * h);
  }
  return scalar_from_derivatives(g, dg, dgamma);
}

const std::vector<Vec4>& audit_directions() {
  static const std::vector<Vec4> dirs = [] {
    std::vector<Vec4> v;
    for (int i = 0; i < 4; ++i)
      for (int s : {1, -1}) {
        Vec4 d = Vec4::Zero();
        d(i) = s;
        v.push_back(d);
      }
    for (int s0 : {1, -1})
      for (int s1 : {1, -1})
        for (int s2 : {1, -1})
          for (int s3 : {1, -1})
            v.push_back(Vec4(0.5 * s0, 0.5 * s1, 0.5 * s2, 0.5 * s3));
    const double r = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        for (int si : {1, -1})
          for (int sj : {1, -1}) {
            Vec4 d = Vec4::Zero();
            d(i) = r * si;
            d(j) = r * sj;
            v.push_back(d);
          }
    return v;
  }();
  return dirs;
}

FalloffReport verify_falloff(const MetricField& field, double slope_tol, int sphere_count) {
  field.chart.validate();
  if (sphere_count < 4) throw std::invalid_argument("verify_falloff: need >= 4 spheres");
  const double lo = 4.0 * field.chart.inner_radius;
  const double hi = 400.0 * field.chart.inner_radius;  // two decades

  FalloffReport rep;
  for (int i = 0; i < sphere_count; ++i) {
    const double rho =
        lo * std::pow(hi / lo, static_cast<double>(i) / (sphere_count - 1));
    double dev = 0.0, ddev = 0.0;
    for (const Vec4& n : audit_directions()) {
      const Vec4 x = rho * n;
      dev = std::max(dev, (eval_metric(field, x) - Mat4::Identity()).cwiseAbs().maxCoeff());
      const MetricDerivatives dg = metric_derivatives(field, x);
      for (int l = 0; l < 4; ++l) ddev = std::max(ddev, dg.d[l].cwiseAbs().maxCoeff());
    }
    rep.radii.push_back(rho);
    rep.dev_g.push_back(dev);
    rep.dev_dg.push_back(ddev);
  }

  const SlopeFit fg = loglog_slope(rep.radii, rep.dev_g);
  const SlopeFit fdg = loglog_slope(rep.radii, rep.dev_dg);
  rep.at_noise_floor = fg.at_noise_floor;
  if (fg.at_noise_floor) {
    // Deviations below the floor everywhere: flat-like field, trivially admissible.
    rep.pass = true;
    return rep;
  }
  rep.slope_g = fg.slope;
  rep.slope_dg = fdg.at_noise_floor ? fg.slope - 1.0 : fdg.slope;
  const double eps = field.chart.falloff_epsilon;
  rep.pass = rep.slope_g <= -1.0 - eps + slope_tol && rep.slope_dg <= -2.0 - eps + slope_tol;
  return rep;
}

MetricField rotated_field(const MetricField& field, const Mat4& rotation) {
  const Mat4 r = rotation;
  if ((r * r.transpose() - Mat4::Identity()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("rotated_field: matrix is not orthogonal");
  MetricField out;
  out.chart = field.chart;
  out.label = field.label + "/rotated";
  out.mode = field.mode;
  out.g = [field, r](const Vec4& x) -> Mat4 { return r.transpose() * field.g(r * x) * r; };
  if (field.dg)
    out.dg = [field, r](const Vec4& x) {
      const MetricDerivatives inner = field.dg(r * x);
      MetricDerivatives o;
      for (int l = 0; l < 4; ++l) {
        Mat4 acc = Mat4::Zero();
        for (int c = 0; c < 4; ++c) acc += r(c, l) * inner.d[c];
        o.d[l] = r.transpose() * acc * r;
      }
      return o;
    };
  if (field.d2g)
    out.d2g = [field, r](const Vec4& x) {
      const MetricSecondDerivatives inner = field.d2g(r * x);
      MetricSecondDerivatives o;
      for (int l = 0; l < 4; ++l)
        for (int m = 0; m < 4; ++m) {
          Mat4 acc = Mat4::Zero();
          for (int c = 0; c < 4; ++c)
            for (int d = 0; d < 4; ++d) acc += r(c, l) * r(d, m) * inner.d2[c][d];
          o.d2[l][m] = r.transpose() * acc * r;
        }
      return o;
    };
  return out;
}

double invariance_defect(const MetricField& field, const Mat4& rotation,
                         const std::vector<double>& radii) {
  double defect = 0.0;
  for (double rho : radii)
    for (const Vec4& n : audit_directions()) {
      const Vec4 x = rho * n;
      const Mat4 lhs = rotation.transpose() * eval_metric(field, rotation * x) * rotation;
      defect = std::max(defect, (lhs - eval_metric(field, x)).cwiseAbs().maxCoeff());
    }
  return defect;
}

}  // namespace alemass
