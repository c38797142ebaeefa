#pragma once

#include "alemass/rational.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace alemass {

using IntMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

// Symmetric integer intersection form with optional class labels.
struct IntersectionForm {
  IntMatrix q;
  std::vector<std::string> labels;

  int rank_size() const { return static_cast<int>(q.rows()); }
  void validate() const;
  static IntersectionForm diagonal(const std::vector<long long>& entries);
};

// Exact signature by rational symmetric congruence reduction (LDL^T with
// diagonal pivoting and the hyperbolic-pair fallback).  No floating point.
struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  Rational determinant;  // product of the congruence pivots = det(Q)
};
Signature signature(const IntersectionForm& form);

inline int b_plus(const IntersectionForm& form) { return signature(form).positive; }

bool negative_definite(const IntersectionForm& form);

// Count of classes with positive self-intersection and pairwise-zero
// products.  A positive-diagonal class with a nonzero product against another
// selected class is a malformed configuration and throws, naming the pair.
// When an ambient form is supplied, the count is compared against its b_plus.
struct EndsBound {
  int count = 0;
  std::optional<int> ambient_b_plus;
  bool consistent = true;  // count <= ambient b_plus (when ambient given)
};
EndsBound ends_bound(const IntersectionForm& gram,
                     const IntersectionForm* ambient = nullptr);

}  // namespace alemass
