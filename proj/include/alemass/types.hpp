#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>

namespace alemass {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;
using Eigen::MatrixXd;
using Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

// Unit 3-sphere volume, 2 pi^2.
inline constexpr double kSphereVolume = 2.0 * kPi * kPi;

// Chrusciel mass normalization in real dimension 4: Gamma(2) / (4 * 3 * pi^2).
inline constexpr double kMassNormalization = 1.0 / (12.0 * kPi * kPi);

// Standard complex structure on R^4 = C^2, z1 = x1 + i x2, z2 = x3 + i x4:
// J e1 = e2, J e2 = -e1, J e3 = e4, J e4 = -e3.
inline const Mat4& standard_complex_structure() {
  static const Mat4 j = [] {
    Mat4 m = Mat4::Zero();
    m(1, 0) = 1.0;
    m(0, 1) = -1.0;
    m(3, 2) = 1.0;
    m(2, 3) = -1.0;
    return m;
  }();
  return j;
}

// Reference symplectic form omega0 = dx1^dx2 + dx3^dx4 as the antisymmetric
// matrix W with omega0(u, v) = u^T W v.  Satisfies W = -J0.
inline const Mat4& standard_symplectic_matrix() {
  static const Mat4 w = (-standard_complex_structure()).eval();
  return w;
}

// 2-form pointwise norm |w|^2 = sum_{j<k} w_jk^2.  For antisymmetric 4x4
// matrices this dominates the operator norm, which is what the Moser
// nondegeneracy gate relies on.
inline double two_form_norm(const Mat4& w) {
  double s = 0.0;
  for (int j = 0; j < 4; ++j)
    for (int k = j + 1; k < 4; ++k) s += w(j, k) * w(j, k);
  return std::sqrt(s);
}

// Deterministic pairwise reduction; summation order is fixed by the input
// order regardless of how the caller partitions work.
inline double pairwise_sum(std::span<const double> v) {
  const std::size_t n = v.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

inline void require_finite(const Vec4& x, const char* what) {
  if (!x.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite coordinates");
}

}  // namespace alemass
