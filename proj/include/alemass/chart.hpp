#pragma once

#include <stdexcept>
#include <string>

namespace alemass {

// Asymptotic chart R^4 \ B_a(0), optionally quotiented by a finite group
// acting freely on the sphere at infinity.  group_order = |Gamma|; the chart
// carries the invariant field on the cover and integrals divide by |Gamma|.
struct AsymptoticChart {
  double inner_radius = 1.0;    // a > 0
  int group_order = 1;          // |Gamma| >= 1
  double falloff_epsilon = 1.0; // declared epsilon in g = delta + O(rho^{-1-eps})

  void validate() const {
    if (!(inner_radius > 0.0))
      throw std::invalid_argument("AsymptoticChart: inner_radius must be positive");
    if (group_order < 1)
      throw std::invalid_argument("AsymptoticChart: group_order must be >= 1");
    if (!(falloff_epsilon > 0.0))
      throw std::invalid_argument("AsymptoticChart: falloff_epsilon must be positive");
  }
};

// Finite-difference step rule shared by all first-derivative stencils.
inline double fd_step(double rho) {
  double h = rho * 1e-4;
  return h > 1e-6 ? h : 1e-6;
}

}  // namespace alemass
