#include "alemass/intersection.hpp"

#include <stdexcept>

namespace alemass {

void IntersectionForm::validate() const {
  if (q.rows() != q.cols()) throw std::invalid_argument("IntersectionForm: matrix not square");
  if (q != q.transpose()) throw std::invalid_argument("IntersectionForm: matrix not symmetric");
  if (!labels.empty() && static_cast<Eigen::Index>(labels.size()) != q.rows())
    throw std::invalid_argument("IntersectionForm: label count mismatch");
}

IntersectionForm IntersectionForm::diagonal(const std::vector<long long>& entries) {
  IntersectionForm form;
  const auto n = static_cast<Eigen::Index>(entries.size());
  form.q = IntMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) form.q(i, i) = entries[i];
  return form;
}

Signature signature(const IntersectionForm& form) {
  form.validate();
  const int n = form.rank_size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = Rational(form.q(i, j));

  // Symmetric congruence reduction.  Invariant entering step k: rows and
  // columns < k are zero off their diagonal pivot, and the trailing block is
  // symmetric.  Swaps, unit shears and the hyperbolic row+column add are all
  // unimodular congruences, so the pivot product is the exact determinant.
  Signature sig;
  sig.determinant = Rational(1);
  bool singular = false;
  const Rational zero(0);
  for (int k = 0; k < n; ++k) {
    if (a[k][k] == zero) {
      int diag = -1;
      for (int i = k + 1; i < n && diag < 0; ++i)
        if (a[i][i] != zero) diag = i;
      if (diag >= 0) {
        std::swap(a[k], a[diag]);
        for (int i = 0; i < n; ++i) std::swap(a[i][k], a[i][diag]);
      } else {
        int off = -1;
        for (int j = k + 1; j < n && off < 0; ++j)
          if (a[k][j] != zero) off = j;
        if (off < 0) {
          // Row k is zero across the trailing block: radical direction.
          ++sig.zero;
          singular = true;
          continue;
        }
        // All trailing diagonals vanish: fold column `off` into k, giving
        // a[k][k] = 2 a[k][off] != 0.
        for (int m = k; m < n; ++m) a[k][m] += a[off][m];
        for (int m = k; m < n; ++m) a[m][k] += a[m][off];
      }
    }
    const Rational pivot = a[k][k];
    sig.determinant *= pivot;
    if (pivot.sign() > 0)
      ++sig.positive;
    else
      ++sig.negative;
    // Schur complement of the pivot: one correction per trailing entry.
    for (int i = k + 1; i < n; ++i) {
      const Rational aik = a[i][k];
      if (aik == zero) continue;
      const Rational f = aik / pivot;
      for (int m = k + 1; m < n; ++m) a[i][m] -= f * a[k][m];
    }
    for (int i = k + 1; i < n; ++i) {
      a[i][k] = zero;
      a[k][i] = zero;
    }
    // Restore exact symmetry of the trailing block (it is symmetric by
    // construction; this guards against asymmetric rounding of logic bugs,
    // not arithmetic, and costs nothing at these sizes).
    for (int i = k + 1; i < n; ++i)
      for (int j = i + 1; j < n; ++j) a[j][i] = a[i][j];
  }
  if (singular) sig.determinant = Rational(0);
  return sig;
}

bool negative_definite(const IntersectionForm& form) {
  const Signature sig = signature(form);
  return sig.negative == form.rank_size();
}

EndsBound ends_bound(const IntersectionForm& gram, const IntersectionForm* ambient) {
  gram.validate();
  const int n = gram.rank_size();
  std::vector<int> selected;
  for (int i = 0; i < n; ++i)
    if (gram.q(i, i) > 0) selected.push_back(i);
  for (std::size_t a = 0; a < selected.size(); ++a)
    for (std::size_t b = a + 1; b < selected.size(); ++b)
      if (gram.q(selected[a], selected[b]) != 0)
        throw std::invalid_argument(
            "ends_bound: classes " + std::to_string(selected[a]) + " and " +
            std::to_string(selected[b]) +
            " have positive self-intersection but nonzero pairing " +
            std::to_string(gram.q(selected[a], selected[b])));
  EndsBound out;
  out.count = static_cast<int>(selected.size());
  if (ambient) {
    out.ambient_b_plus = b_plus(*ambient);
    out.consistent = out.count <= *out.ambient_b_plus;
  }
  return out;
}

}  // namespace alemass
