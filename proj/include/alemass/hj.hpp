#pragma once

#include "alemass/intersection.hpp"
#include "alemass/rational.hpp"

#include <vector>

namespace alemass {

// Hirzebruch-Jung string of the cyclic quotient singularity of type (q, p):
// q/p = e1 - 1/(e2 - 1/(... - 1/ek)) with every e_j >= 2.
struct HJString {
  long long q = 0;
  long long p = 0;
  std::vector<long long> chain;          // e_1 .. e_k
  std::vector<Rational> intermediates;   // d_1 = q/p, d_2, ...
};

// Ceiling continued-fraction expansion.  Requires 0 < p < q, gcd(p, q) = 1.
HJString hj_resolve(long long q, long long p);

// Exact backward evaluation of the continued fraction of a chain.
Rational hj_evaluate(const std::vector<long long>& chain);

// Plumbing intersection form: tridiagonal with diagonal -e_j and 1 off it.
// Negative definite with |det| = q for every HJ chain.
IntersectionForm hj_plumbing_form(const std::vector<long long>& chain);

// Multiplicative inverse of p mod q (gcd(p, q) = 1).
long long mod_inverse(long long p, long long q);

}  // namespace alemass
