#pragma once

#include "alemass/types.hpp"

#include <string>
#include <vector>

namespace alemass {

// Quadrature rule on the unit 3-sphere.  Nodes are unit vectors, weights sum
// to the sphere volume 2 pi^2.  Product rule in the hyperspherical angles
// (psi, theta, phi) with counts (N, N, 2N): Gauss-Chebyshev of the 2nd kind
// in cos(psi) (exact for the sin^2 measure factor), Gauss-Legendre in
// cos(theta), uniform in phi.  Exact on ambient polynomials of degree
// <= 2N - 1.
struct SphereRule {
  Eigen::Matrix<double, Eigen::Dynamic, 4> nodes;
  VectorXd weights;
  int angular_count = 0;      // the N of (N, N, 2N)
  std::string order_label;

  int size() const { return static_cast<int>(weights.size()); }
};

// Gauss-Legendre nodes/weights on [-1, 1], Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

SphereRule make_sphere_rule(int n = 24);

// Closed-form integral of x1^a1 x2^a2 x3^a3 x4^a4 over the unit 3-sphere.
// Zero when any exponent is odd; otherwise 2 * prod Gamma(b_i + 1/2) / Gamma(B + 2)
// with b_i = a_i / 2 and B = sum b_i.
double sphere_monomial_integral(int a1, int a2, int a3, int a4);

// Self-test used at construction time and by the unit suite: weights sum to
// 2 pi^2 within 1e-12 and all ambient monomials of degree <= 4 integrate
// exactly within 1e-10.
void check_sphere_rule(const SphereRule& rule);

}  // namespace alemass
