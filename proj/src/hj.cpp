#include "alemass/hj.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace alemass {

HJString hj_resolve(long long q, long long p) {
  if (q < 2 || p < 1 || p >= q)
    throw std::invalid_argument("hj_resolve: need 0 < p < q >= 2, got q=" + std::to_string(q) +
                                ", p=" + std::to_string(p));
  if (std::gcd(p, q) != 1)
    throw std::invalid_argument("hj_resolve: gcd(p, q) must be 1, got q=" + std::to_string(q) +
                                ", p=" + std::to_string(p));
  HJString out;
  out.q = q;
  out.p = p;
  Rational d(q, p);
  while (true) {
    out.intermediates.push_back(d);
    const long long e = d.ceil();
    out.chain.push_back(e);
    if (d.is_integer()) break;
    d = Rational(1) / (Rational(e) - d);
    if (out.chain.size() > static_cast<std::size_t>(q))
      throw std::logic_error("hj_resolve: expansion did not terminate");
  }
  return out;
}

Rational hj_evaluate(const std::vector<long long>& chain) {
  if (chain.empty()) throw std::invalid_argument("hj_evaluate: empty chain");
  Rational v(chain.back());
  for (auto it = chain.rbegin() + 1; it != chain.rend(); ++it) {
    if (v.num() == 0) throw std::domain_error("hj_evaluate: zero tail value");
    v = Rational(*it) - Rational(1) / v;
  }
  return v;
}

IntersectionForm hj_plumbing_form(const std::vector<long long>& chain) {
  if (chain.empty()) throw std::invalid_argument("hj_plumbing_form: empty chain");
  IntersectionForm form;
  const auto n = static_cast<Eigen::Index>(chain.size());
  form.q = IntMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    form.q(i, i) = -chain[static_cast<std::size_t>(i)];
    if (i + 1 < n) {
      form.q(i, i + 1) = 1;
      form.q(i + 1, i) = 1;
    }
    form.labels.push_back("E" + std::to_string(i + 1));
  }
  return form;
}

long long mod_inverse(long long p, long long q) {
  if (q < 1) throw std::invalid_argument("mod_inverse: modulus must be positive");
  long long r0 = q, r1 = ((p % q) + q) % q;
  long long s0 = 0, s1 = 1;
  while (r1 != 0) {
    const long long quo = r0 / r1;
    const long long r2 = r0 - quo * r1;
    const long long s2 = s0 - quo * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  if (r0 != 1) throw std::invalid_argument("mod_inverse: arguments not coprime");
  return ((s0 % q) + q) % q;
}

}  // namespace alemass
