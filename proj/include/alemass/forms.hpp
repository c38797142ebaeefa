#pragma once

#include "alemass/chart.hpp"
#include "alemass/types.hpp"

#include <functional>
#include <string>

namespace alemass {

// Covector field theta = theta_k dx^k.
struct OneFormField {
  std::string label;
  std::function<Vec4(const Vec4&)> eval;
};

// 2-form as the antisymmetric matrix W with omega(u, v) = u^T W v.
struct TwoFormField {
  std::string label;
  std::function<Mat4(const Vec4&)> eval;
  bool closedness_certified = false;
};

// Central-difference exterior derivative of a 1-form:
// (d theta)_jk = partial_j theta_k - partial_k theta_j.
Mat4 fd_exterior_derivative(const OneFormField& theta, const Vec4& x);

// Sup norm of the 3-form d omega at x, components
// partial_j w_kl + partial_k w_lj + partial_l w_jk over j < k < l.
double fd_closedness_defect(const TwoFormField& omega, const Vec4& x);

// Certifies d omega = 0 on the audit grid (48 directions x the given radii).
TwoFormField certify_closed(TwoFormField omega, const std::vector<double>& radii,
                            double tol = 1e-6);

// Angular 1-form  m = x1 dx2 - x2 dx1 + x3 dx4 - x4 dx3 = (J0 x) . dx;
// dm = 2 omega0.
Vec4 angular_one_form(const Vec4& x);

// sigma_hopf = m / t: the S^3 contact form pulled back radially.  Tangential,
// |sigma_hopf| = 1/rho, eta .| d(sigma_hopf) = 0.
Vec4 sigma_hopf(const Vec4& x);

// sigma_F = d(x1 / rho): closed, tangential, pulled back from S^3.
Vec4 sigma_closed(const Vec4& x);

// Pullback of a 1-form under the linear map R: (R* theta)(x) = R^T theta(Rx).
OneFormField pullback_one_form(const OneFormField& theta, const Mat4& r);

}  // namespace alemass
