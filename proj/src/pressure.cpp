#include <cmath>
#include <vector>

#include "floatctl/errors.hpp"
#include "floatctl/nonlinear.hpp"

namespace floatctl {

namespace {

// Thomas solve of a tridiagonal system; diag/lower/upper are overwritten
void tridiag_solve(std::vector<double>& lower, std::vector<double>& diag,
                   std::vector<double>& upper, std::vector<double>& rhs) {
  const size_t n = diag.size();
  for (size_t i = 1; i < n; ++i) {
    const double w = lower[i] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

} // namespace

PressureProfile reconstruct_interior_pressure(const NonlinearState& s, double ddelta, double u,
                                              const PhysicalConfig& cfg, int n_cells) {
  if (n_cells < 4) throw std::invalid_argument("pressure grid too coarse");
  const double l = cfg.l;
  const int n = n_cells; // nodes 0..n on [-l, l]
  const double h = 2.0 * l / n;

  PressureProfile prof;
  prof.x.resize(n + 1);
  std::vector<double> hw(n + 1), src(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double x = -l + j * h;
    prof.x[j] = x;
    hw[j] = cfg.h_eq(x) + s.delta;
    if (!(hw[j] > 0)) throw NumericalError("pressure reconstruction: touchdown");
    const double qi = -x * s.eta + s.qi_avg;
    src[j] = qi * qi / hw[j]; // q_i^2 / h_w, differentiated twice below
  }

  const InterfaceTraces tr = interface_traces(s, cfg);
  const double bern_i_minus =
      0.5 * cfg.rho * std::pow((l * s.eta + s.qi_avg) / hw[0], 2); // q_i(-l)/h_w(-l)
  const double bern_i_plus = 0.5 * cfg.rho * std::pow((-l * s.eta + s.qi_avg) / hw[n], 2);
  const double Pi_minus = cfg.rho * cfg.g * tr.zeta_minus + tr.bern_minus - bern_i_minus;
  const double Pi_plus = cfg.rho * cfg.g * tr.zeta_plus + tr.bern_plus - bern_i_plus;

  // -( (h_w/rho) Pi' )' = -ddelta + (q_i^2/h_w)'' on the interior nodes
  const int m = n - 1;
  std::vector<double> lower(m), diag(m), upper(m), rhs(m);
  for (int j = 1; j <= m; ++j) {
    const double a_west = 0.5 * (hw[j - 1] + hw[j]) / cfg.rho;
    const double a_east = 0.5 * (hw[j] + hw[j + 1]) / cfg.rho;
    lower[j - 1] = -a_west / (h * h);
    upper[j - 1] = -a_east / (h * h);
    diag[j - 1] = (a_west + a_east) / (h * h);
    rhs[j - 1] = -ddelta + (src[j + 1] - 2.0 * src[j] + src[j - 1]) / (h * h);
  }
  rhs[0] -= lower[0] * Pi_minus;
  rhs[m - 1] -= upper[m - 1] * Pi_plus;
  tridiag_solve(lower, diag, upper, rhs);

  prof.Pi.resize(n + 1);
  prof.P.resize(n + 1);
  prof.Pi[0] = Pi_minus;
  prof.Pi[n] = Pi_plus;
  for (int j = 1; j <= m; ++j) prof.Pi[j] = rhs[j - 1];
  for (int j = 0; j <= n; ++j) {
    const double zeta_i = s.delta + cfg.h_eq(prof.x[j]) - cfg.h0;
    prof.P[j] = prof.Pi[j] - cfg.rho * cfg.g * zeta_i;
  }

  prof.integral_P = 0.0;
  for (int j = 0; j < n; ++j) prof.integral_P += 0.5 * h * (prof.P[j] + prof.P[j + 1]);
  prof.newton_residual = prof.integral_P + u - cfg.m * cfg.g - cfg.m * ddelta;
  return prof;
}

} // namespace floatctl
