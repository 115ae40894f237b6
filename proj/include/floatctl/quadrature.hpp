#pragma once

#include <functional>

namespace floatctl {

/// Composite trapezoid of f over [a, b] with n panels.
double trapezoid(const std::function<double(double)>& f, double a, double b, int n);

/// Result of a Richardson-checked trapezoid pass.
struct QuadResult {
  double value;      // Richardson extrapolation of the two finest levels
  double error_est;  // |T(h/2) - T(h)| / 3
  int panels;        // panels of the finest level used
};

/// Composite trapezoid refined until the Richardson error estimate drops
/// below rel_tol * |value| (plus a tiny absolute floor). Starts at n0 panels.
QuadResult trapezoid_refined(const std::function<double(double)>& f, double a, double b,
                             double rel_tol = 1e-10, int n0 = 64, int max_doublings = 22);

} // namespace floatctl
