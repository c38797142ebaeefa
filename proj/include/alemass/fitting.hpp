#pragma once

#include "alemass/types.hpp"

#include <functional>
#include <vector>

namespace alemass {

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;          // residual in log space
  bool at_noise_floor = false;
};

// Least-squares line through (log x_i, log y_i).  Samples with y below the
// floor are treated as noise; if all are, at_noise_floor is set and the slope
// is meaningless.
SlopeFit loglog_slope(const std::vector<double>& x, const std::vector<double>& y,
                      double floor = 1e-13);

struct PowerFit {
  double limit = 0.0;        // m_infinity
  double amplitude = 0.0;    // A in A * rho^{-kappa}
  double kappa = 0.0;
  double b_amplitude = 0.0;  // second-term coefficient when two_term
  bool two_term = false;
  double rms = 0.0;          // absolute RMS of the fit residuals
  bool constant = false;     // samples had no resolvable trend
  bool non_convergent = false;  // kappa <= 0.05: no decaying limit resolved
};

// Fit samples m(rho) = m_inf + A rho^{-kappa} by variable projection: the
// linear pair (m_inf, A) is solved exactly for each kappa and kappa is
// minimized by golden section.  A second term B rho^{-kappa-1} is added only
// when the one-term RMS exceeds two_term_threshold.
PowerFit fit_power_tail(const std::vector<double>& rho, const std::vector<double>& m,
                        double kappa_init, double two_term_threshold = 1e-6);

// Richardson extrapolation of f(r) = L + c1 r^2 + c2 r^4 + ... to r -> 0,
// from samples at r0, r0/2, ..., r0/2^(levels).  Returns the table corner and
// the magnitude of the last correction as an error estimate.
struct RichardsonResult {
  double value = 0.0;
  double last_correction = 0.0;
};
RichardsonResult richardson_even(const std::function<double(double)>& f, double r0, int levels);

// Adaptive Simpson on [a, b] to the given absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = 30);

}  // namespace alemass
