#pragma once

#include <functional>

namespace levyprem {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature on [a, b].
/// Stops when the summed error estimate is below max(abs_tol, rel_tol*|I|).
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, double rel_tol = 0.0, int max_intervals = 4000);

/// Integral over [a, inf) via the substitution x = a + t / (1 - t).
QuadratureResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                       double abs_tol, double rel_tol = 0.0,
                                       int max_intervals = 4000);

}  // namespace levyprem
