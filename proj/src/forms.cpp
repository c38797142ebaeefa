#include "alemass/forms.hpp"

#include "alemass/metric_field.hpp"

#include <cmath>
#include <stdexcept>

namespace alemass {

Mat4 fd_exterior_derivative(const OneFormField& theta, const Vec4& x) {
  const double h = fd_step(x.norm());
  Mat4 grad;  // grad(j, k) = partial_j theta_k
  for (int j = 0; j < 4; ++j) {
    Vec4 xp = x, xm = x;
    xp(j) += h;
    xm(j) -= h;
    grad.row(j) = ((theta.eval(xp) - theta.eval(xm)) / (2.0 * h)).transpose();
  }
  return grad - grad.transpose();
}

double fd_closedness_defect(const TwoFormField& omega, const Vec4& x) {
  const double h = fd_step(x.norm());
  std::array<Mat4, 4> dw;
  for (int j = 0; j < 4; ++j) {
    Vec4 xp = x, xm = x;
    xp(j) += h;
    xm(j) -= h;
    dw[j] = (omega.eval(xp) - omega.eval(xm)) / (2.0 * h);
  }
  double defect = 0.0;
  for (int j = 0; j < 4; ++j)
    for (int k = j + 1; k < 4; ++k)
      for (int l = k + 1; l < 4; ++l)
        defect = std::max(defect,
                          std::abs(dw[j](k, l) + dw[k](l, j) + dw[l](j, k)));
  return defect;
}

TwoFormField certify_closed(TwoFormField omega, const std::vector<double>& radii, double tol) {
  for (double rho : radii)
    for (const Vec4& n : audit_directions()) {
      const double defect = fd_closedness_defect(omega, rho * n);
      if (defect > tol)
        throw std::runtime_error("certify_closed: '" + omega.label + "' has d-defect " +
                                 std::to_string(defect) + " at rho=" + std::to_string(rho));
    }
  omega.closedness_certified = true;
  return omega;
}

Vec4 angular_one_form(const Vec4& x) { return standard_complex_structure() * x; }

Vec4 sigma_hopf(const Vec4& x) { return angular_one_form(x) / x.squaredNorm(); }

Vec4 sigma_closed(const Vec4& x) {
  const double rho = x.norm();
  Vec4 e1 = Vec4::Zero();
  e1(0) = 1.0;
  return e1 / rho - x(0) * x / (rho * rho * rho);
}

OneFormField pullback_one_form(const OneFormField& theta, const Mat4& r) {
  OneFormField out;
  out.label = theta.label + "/pullback";
  out.eval = [theta, r](const Vec4& x) -> Vec4 { return r.transpose() * theta.eval(r * x); };
  return out;
}

}  // namespace alemass
