#include "alemass/kahler.hpp"

#include "alemass/quadrature.hpp"
#include "alemass/fitting.hpp"

#include <cmath>
#include <stdexcept>

namespace alemass {

namespace {

void check_t(const RadialKahlerPotential& pot, double t) {
  if (!(t > pot.domain_floor))
    throw std::domain_error("RadialKahlerPotential '" + pot.label + "': t=" + std::to_string(t) +
                            " below the domain floor");
}

Mat4 plane_projector(const Vec4& x) {
  const Vec4 y = standard_complex_structure() * x;
  return x * x.transpose() + y * y.transpose();
}

}  // namespace

Mat4 kahler_metric_from_potential(const RadialKahlerPotential& pot, const Vec4& x) {
  const double t = x.squaredNorm();
  check_t(pot, t);
  const double up = pot.du(t), upp = pot.d2u(t);
  if (!(up > 0.0) || !(up + t * upp > 0.0))
    throw std::runtime_error("RadialKahlerPotential '" + pot.label +
                             "': Hermitian form not positive definite at t=" + std::to_string(t));
  return up * Mat4::Identity() + upp * plane_projector(x);
}

Eigen::Matrix2cd hermitian_form(const RadialKahlerPotential& pot, const Vec4& x) {
  const double t = x.squaredNorm();
  check_t(pot, t);
  const std::complex<double> z1(x(0), x(1)), z2(x(2), x(3));
  Eigen::Matrix2cd h;
  const double up = pot.du(t), upp = pot.d2u(t);
  h(0, 0) = up + upp * std::norm(z1);
  h(1, 1) = up + upp * std::norm(z2);
  h(0, 1) = upp * std::conj(z1) * z2;
  h(1, 0) = std::conj(h(0, 1));
  return h;
}

Mat4 kahler_form_from_metric(const Mat4& g) {
  return -g * standard_complex_structure();
}

Mat4 kahler_form(const RadialKahlerPotential& pot, const Vec4& x) {
  return kahler_form_from_metric(kahler_metric_from_potential(pot, x));
}

MetricField make_kahler_field(const RadialKahlerPotential& pot, const AsymptoticChart& chart,
                              const std::string& label) {
  chart.validate();
  MetricField field;
  field.chart = chart;
  field.label = label;
  field.g = [pot](const Vec4& x) { return kahler_metric_from_potential(pot, x); };

  const Mat4& j0 = standard_complex_structure();
  if (pot.d3u) {
    field.mode = DerivativeMode::Analytic;
    field.dg = [pot, j0](const Vec4& x) {
      const double t = x.squaredNorm();
      const double upp = pot.d2u(t), uppp = pot.d3u(t);
      const Mat4 p = plane_projector(x);
      const Vec4 y = j0 * x;
      MetricDerivatives out;
      for (int l = 0; l < 4; ++l) {
        Vec4 el = Vec4::Zero();
        el(l) = 1.0;
        const Vec4 jl = j0.col(l);
        const Mat4 pl = el * x.transpose() + x * el.transpose() + jl * y.transpose() +
                        y * jl.transpose();
        out.d[l] = 2.0 * x(l) * (upp * Mat4::Identity() + uppp * p) + upp * pl;
      }
      return out;
    };
  }
  if (pot.d3u && pot.d4u) {
    field.d2g = [pot, j0](const Vec4& x) {
      const double t = x.squaredNorm();
      const double upp = pot.d2u(t), uppp = pot.d3u(t), upppp = pot.d4u(t);
      const Mat4 p = plane_projector(x);
      const Vec4 y = j0 * x;
      std::array<Vec4, 4> e, j;
      std::array<Mat4, 4> pl;
      for (int l = 0; l < 4; ++l) {
        e[l] = Vec4::Zero();
        e[l](l) = 1.0;
        j[l] = j0.col(l);
        pl[l] = e[l] * x.transpose() + x * e[l].transpose() + j[l] * y.transpose() +
                y * j[l].transpose();
      }
      MetricSecondDerivatives out;
      for (int l = 0; l < 4; ++l)
        for (int m = 0; m < 4; ++m) {
          const Mat4 plm = e[l] * e[m].transpose() + e[m] * e[l].transpose() +
                           j[l] * j[m].transpose() + j[m] * j[l].transpose();
          out.d2[l][m] = 2.0 * (l == m ? 1.0 : 0.0) * (upp * Mat4::Identity() + uppp * p) +
                         4.0 * x(l) * x(m) * (uppp * Mat4::Identity() + upppp * p) +
                         2.0 * x(l) * uppp * pl[m] + 2.0 * x(m) * uppp * pl[l] + upp * plm;
        }
      return out;
    };
  }
  return field;
}

namespace {

// Hopf sections of the two projective charts at scale r:
//   chart 0: w in |w| <= 1 -> r (1, w) / sqrt(1 + |w|^2)
//   chart 1: v in |v| <= 1 -> r (v, 1) / sqrt(1 + |v|^2)
Vec4 hopf_section(int chart, double re, double im, double r) {
  const double s = 1.0 / std::sqrt(1.0 + re * re + im * im);
  Vec4 x;
  if (chart == 0)
    x << r * s, 0.0, r * s * re, r * s * im;
  else
    x << r * s * re, r * s * im, r * s, 0.0;
  return x;
}

}  // namespace

double hopf_cycle_area(const RadialKahlerPotential& pot, double r, int disk_order) {
  if (!(r > 0.0)) throw std::invalid_argument("hopf_cycle_area: r must be positive");
  std::vector<double> gl_x, gl_w;
  gauss_legendre(disk_order, gl_x, gl_w);
  const int n_ang = 2 * disk_order;
  const Mat4& w0 = standard_symplectic_matrix();

  std::vector<double> terms;
  terms.reserve(2 * disk_order * n_ang);
  const double hd = 1e-6;  // FD step for the section differential
  for (int chart = 0; chart < 2; ++chart)
    for (int i = 0; i < disk_order; ++i) {
      const double rad = 0.5 * (gl_x[i] + 1.0);  // map [-1,1] -> [0,1]
      const double wrad = 0.5 * gl_w[i] * rad;   // polar Jacobian
      for (int a = 0; a < n_ang; ++a) {
        const double ang = 2.0 * kPi * (a + 0.5) / n_ang;
        const double u = rad * std::cos(ang), v = rad * std::sin(ang);
        const Vec4 tu = (hopf_section(chart, u + hd, v, r) - hopf_section(chart, u - hd, v, r)) /
                        (2.0 * hd);
        const Vec4 tv = (hopf_section(chart, u, v + hd, r) - hopf_section(chart, u, v - hd, r)) /
                        (2.0 * hd);
        const Vec4 x = hopf_section(chart, u, v, r);
        const Mat4 dw = kahler_form(pot, x) - w0;
        terms.push_back(wrad * (2.0 * kPi / n_ang) * tu.dot(dw * tv));
      }
    }
  return pairwise_sum(terms);
}

ExceptionalArea exceptional_area(const RadialKahlerPotential& pot, double r0, int levels,
                                 int disk_order) {
  const RichardsonResult res = richardson_even(
      [&](double r) { return hopf_cycle_area(pot, r, disk_order); }, r0, levels);
  return ExceptionalArea{res.value, res.last_correction};
}

}  // namespace alemass
