#include "floatctl/quadrature.hpp"

#include <cmath>
#include <cstdlib>

namespace floatctl {

double trapezoid(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = 0.5 * (f(a) + f(b));
  for (int i = 1; i < n; ++i) s += f(a + i * h);
  return s * h;
}

QuadResult trapezoid_refined(const std::function<double(double)>& f, double a, double b,
                             double rel_tol, int n0, int max_doublings) {
  int n = n0;
  double coarse = trapezoid(f, a, b, n);
  for (int pass = 0; pass < max_doublings; ++pass) {
    // reuse: T(h/2) = T(h)/2 + h/2 * sum of midpoints
    const double h = (b - a) / n;
    double mids = 0.0;
    for (int i = 0; i < n; ++i) mids += f(a + (i + 0.5) * h);
    const double fine = 0.5 * coarse + 0.5 * h * mids;
    const double err = std::abs(fine - coarse) / 3.0;
    const double value = fine + (fine - coarse) / 3.0;
    if (err <= rel_tol * (std::abs(value) + 1e-300) || err < 1e-15 * (std::abs(value) + 1.0))
      return {value, err, 2 * n};
    coarse = fine;
    n *= 2;
  }
  return {coarse, std::abs(coarse) * rel_tol, n};
}

} // namespace floatctl
