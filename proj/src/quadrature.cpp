#include "alemass/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace alemass {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need n >= 1");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n(x).
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

SphereRule make_sphere_rule(int n) {
  if (n < 3) throw std::invalid_argument("make_sphere_rule: need n >= 3");
  // Each angular factor uses the rule that is polynomially exact for its
  // measure: Gauss-Chebyshev (2nd kind) absorbs the sin^2(psi) factor, the
  // substitution c = cos(theta) turns the sin(theta) factor into plain
  // Gauss-Legendre, and the uniform rule is exact for trig polynomials in
  // phi.  The product integrates every ambient monomial of degree <= 2n - 1
  // exactly; in particular the weight sum is 2 pi^2 to rounding for all n.
  std::vector<double> ct, wt;
  gauss_legendre(n, ct, wt);

  SphereRule rule;
  rule.angular_count = n;
  rule.order_label = "gc2xglxuniform(" + std::to_string(n) + "," + std::to_string(n) + "," +
                     std::to_string(2 * n) + ")";
  const int total = n * n * 2 * n;
  rule.nodes.resize(total, 4);
  rule.weights.resize(total);

  int idx = 0;
  for (int a = 0; a < n; ++a) {
    const double psi = kPi * (a + 1) / (n + 1);
    const double sp = std::sin(psi), cp = std::cos(psi);
    const double wa = kPi / (n + 1) * sp * sp;
    for (int b = 0; b < n; ++b) {
      const double st = std::sqrt(1.0 - ct[b] * ct[b]);
      for (int c = 0; c < 2 * n; ++c) {
        const double phi = kPi * (c + 0.5) / n;
        rule.nodes(idx, 0) = cp;
        rule.nodes(idx, 1) = sp * ct[b];
        rule.nodes(idx, 2) = sp * st * std::cos(phi);
        rule.nodes(idx, 3) = sp * st * std::sin(phi);
        rule.weights(idx) = wa * wt[b] * (kPi / n);
        ++idx;
      }
    }
  }
  check_sphere_rule(rule);
  return rule;
}

double sphere_monomial_integral(int a1, int a2, int a3, int a4) {
  const int a[4] = {a1, a2, a3, a4};
  int bsum = 0;
  double logprod = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (a[i] < 0) throw std::invalid_argument("sphere_monomial_integral: negative exponent");
    if (a[i] % 2 != 0) return 0.0;
    const int b = a[i] / 2;
    bsum += b;
    logprod += std::lgamma(b + 0.5);
  }
  return 2.0 * std::exp(logprod - std::lgamma(bsum + 2.0));
}

void check_sphere_rule(const SphereRule& rule) {
  std::vector<double> terms(rule.size());
  for (int i = 0; i < rule.size(); ++i) terms[i] = rule.weights(i);
  const double vol = pairwise_sum(terms);
  if (std::abs(vol - kSphereVolume) > 1e-12)
    throw std::runtime_error("SphereRule self-test: weights sum " + std::to_string(vol) +
                             " != 2 pi^2");

  for (int a1 = 0; a1 <= 4; ++a1)
    for (int a2 = 0; a2 + a1 <= 4; ++a2)
      for (int a3 = 0; a3 + a2 + a1 <= 4; ++a3)
        for (int a4 = 0; a4 + a3 + a2 + a1 <= 4; ++a4) {
          for (int i = 0; i < rule.size(); ++i) {
            const auto n = rule.nodes.row(i);
            terms[i] = rule.weights(i) * std::pow(n(0), a1) * std::pow(n(1), a2) *
                       std::pow(n(2), a3) * std::pow(n(3), a4);
          }
          const double got = pairwise_sum(terms);
          const double want = sphere_monomial_integral(a1, a2, a3, a4);
          if (std::abs(got - want) > 1e-10)
            throw std::runtime_error("SphereRule self-test: monomial (" + std::to_string(a1) +
                                     "," + std::to_string(a2) + "," + std::to_string(a3) + "," +
                                     std::to_string(a4) + ") off by " +
                                     std::to_string(got - want));
        }
}

}  // namespace alemass
