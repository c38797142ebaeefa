#pragma once

#include "alemass/hj.hpp"

#include <string>
#include <utility>
#include <vector>

namespace alemass {

// Generator of a cyclic subgroup of U(2): diag(zeta_q^a, zeta_q^b) stored as
// exact exponent pairs.  lens_generator builds the standard (q, p) action
// diag(zeta_q, zeta_q^p) and certifies freeness away from the origin.
struct LensGenerator {
  long long q = 1;  // order of zeta
  long long a = 0;  // exponent on z1
  long long b = 0;  // exponent on z2
};

LensGenerator lens_generator(long long q, long long p);

// Scalar count and effective quotient of the closed group generated by
// diagonal generators: ell = |Z cap Gamma| counts elements with equal
// exponents mod the common order; |Gamma-check| = |Gamma| / ell.
struct CentralQuotient {
  long long group_order = 1;       // |Gamma|
  long long scalar_count = 1;      // ell
  long long effective_order = 1;   // |Gamma-check|
};
CentralQuotient central_quotient(const std::vector<LensGenerator>& generators,
                                 long long element_cap = 10000);

// Finite subgroups of SO(3) and their singular-fiber profiles on S^2:
//   cyclic(n) -> [n, n]; dihedral(n) -> [2, 2, n]; tetrahedral -> [2, 3, 3];
//   octahedral -> [2, 3, 4]; icosahedral -> [2, 5, 5]; trivial -> [].
struct OrbifoldGroupType {
  enum class Kind { Trivial, Cyclic, Dihedral, Tetrahedral, Octahedral, Icosahedral };
  Kind kind = Kind::Trivial;
  long long n = 0;  // order parameter for cyclic/dihedral

  std::string name() const;
  static OrbifoldGroupType parse(const std::string& text);
};

std::vector<long long> classify_singularities(const OrbifoldGroupType& type);

// Degree of the central capsule vertex: the sphere section plus ell chain
// attachments.
inline long long capsule_degree(long long ell) { return 2 + ell; }

// Plumbing capsule: a central vertex for the orbifold sphere section with ell
// Hirzebruch-Jung chains attached at singular fibers.
struct CapsuleModel {
  long long ell = 0;
  OrbifoldGroupType gamma_check;
  std::vector<std::pair<long long, long long>> local_types;  // (q_i, p_i)
  std::vector<HJString> chains;
  std::vector<std::string> vertex_labels;              // 0 is the central vertex
  std::vector<std::pair<int, int>> edges;
  std::string central_weight;                          // optional user rational, display only

  long long degree() const { return capsule_degree(ell); }
};

// Builds and validates the capsule: the local types must match the
// singularity profile of gamma_check (same multiset of q's), every chain is
// resolved, and the resulting graph is a tree.
CapsuleModel build_capsule(long long ell, const OrbifoldGroupType& gamma_check,
                           const std::vector<std::pair<long long, long long>>& local_types,
                           const std::string& central_weight = "");

}  // namespace alemass
