#pragma once

#include <functional>

namespace curvosc {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
  int panels = 0;
};

// Globally adaptive Gauss-Legendre quadrature on [a, b]: the worst panel is
// bisected until the summed error estimate drops below
// tol * max(|integral|, 1e-3) or the panel budget runs out (converged=false,
// never a silent wrong answer).
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double tol);

// Semi-infinite [a, inf): integrates dyadically growing chunks and stops when
// the extrapolated tail (geometric/power-law fit on the last chunks) is below
// tolerance. Non-decaying integrands come back flagged, not wrong.
QuadratureResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                       double tol);

}  // namespace curvosc
