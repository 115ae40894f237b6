#pragma once

#include <Eigen/Dense>
#include <vector>

#include "floatctl/control_signal.hpp"
#include "floatctl/state.hpp"

namespace floatctl {

/// Finite-volume state of the nonlinear exterior system: cell averages of
/// h = h0 + zeta and q on each component, coupled to the scalars
/// (<q_i>, delta, eta). The interior fields are derived:
/// h_w(x) = h_eq(x) + delta, q_i(x) = -x eta + <q_i>.
struct NonlinearState {
  GridPtr grid; // cells = elements of the nodal grid
  Eigen::VectorXd h; // n_minus + n_plus cells
  Eigen::VectorXd q;
  double qi_avg = 0.0, delta = 0.0, eta = 0.0;
  double time = 0.0;

  static NonlinearState rest(GridPtr grid, const PhysicalConfig& cfg);
  int cells() const { return static_cast<int>(h.size()); }
  double cell_center(int i) const;
  double cell_width(int i) const;
};

/// alpha(delta), alpha'(delta), beta(delta), M(delta) by quadrature of the
/// defining integrals over the wetted column h_w = h_eq + delta.
struct CoefficientSet {
  double alpha;       // (1/2l) int 1/h_w
  double alpha_prime; // -(1/2l) int 1/h_w^2
  double beta;        // (1/4l) int x^2/h_w^2
  double M;           // m + rho int x^2/h_w
};

/// Throws NumericalError on touchdown (h_w <= 0 somewhere).
CoefficientSet coefficients(double delta, const PhysicalConfig& cfg);

struct NonlinearOptions {
  double cfl = 0.45;
  bool muscl = true;             // unlimited linear reconstruction (smooth regime)
  double shock_jump_limit = 0.2; // max cell jump of u +- c relative to sqrt(g h0)
};

/// Exterior traces at x = -+l: zeta and the Bernoulli head B = rho q^2/(2h^2),
/// built from the prescribed interface discharge and the reconstructed depth.
struct InterfaceTraces {
  double zeta_minus, zeta_plus;
  double bern_minus, bern_plus; // B_e(-l), B_e(l)
};

InterfaceTraces interface_traces(const NonlinearState& s, const PhysicalConfig& cfg);

/// Right-hand side of the two scalar ODEs; also used by the pressure solver.
struct ScalarRates {
  double dqi_avg;
  double ddelta;  // = eta
  double deta;    // delta two-dots
};

ScalarRates scalar_rates(const NonlinearState& s, double u, const PhysicalConfig& cfg);

/// One Heun (RK2) step of the coupled finite-volume + ODE system with a
/// Rusanov flux. Validates the CFL bound, positivity, touchdown, and the
/// smoothness guard. u_n and u_np1 are the control at the step endpoints.
NonlinearState step_nonlinear(const NonlinearState& s, double u_n, double u_np1, double dt,
                              const PhysicalConfig& cfg, const NonlinearOptions& opts = {});

/// Largest stable step for the current state under the CFL option.
double max_stable_dt(const NonlinearState& s, const PhysicalConfig& cfg,
                     const NonlinearOptions& opts = {});

struct NonlinearTrajectory {
  std::vector<double> times;
  std::vector<NonlinearState> snapshots;
  std::vector<int> snapshot_steps;
  std::vector<double> volume;       // total water volume per step endpoint
  std::vector<double> energy;       // nonlinear total energy (diagnostic)
  double max_volume_drift_rel = 0.0;
};

struct NonlinearRunOptions {
  double dt = 0.0; // 0: CFL-limited, re-validated every step
  int snapshot_stride = 0;
  NonlinearOptions scheme;
};

NonlinearTrajectory simulate_nonlinear(const NonlinearState& s0, const ControlSignal& u, double T,
                                       const PhysicalConfig& cfg, NonlinearRunOptions opts = {});

/// Total water volume: int_E h dx + int_I h_w dx.
double total_volume(const NonlinearState& s, const PhysicalConfig& cfg);

/// Nonlinear total energy E_f + E_s (with the rest-state offset removed so
/// the rest state has zero energy); dissipated by the Rusanov flux.
double nonlinear_energy(const NonlinearState& s, const PhysicalConfig& cfg);

/// Cell averages of a nodal linear state (exact for the P1 representative).
NonlinearState nonlinear_from_linear(const State& z, const PhysicalConfig& cfg);

/// Nodal view of a finite-volume state for X-norm comparisons (second-order
/// midpoint interpolation; interface/wall q values from the scalars).
State linear_from_nonlinear(const NonlinearState& s, const PhysicalConfig& cfg);

// --- interior pressure reconstruction ---

struct PressureProfile {
  Eigen::VectorXd x;   // nodes on [-l, l]
  Eigen::VectorXd Pi;  // hydrodynamic pressure Pi_i
  Eigen::VectorXd P;   // surface pressure P_i = Pi_i - rho g zeta_i
  double integral_P = 0.0;       // int_{-l}^{l} P_i dx
  double newton_residual = 0.0;  // int P_i + u - m g - m ddelta
};

/// Solves the interior two-point boundary value problem
/// -(h_w/rho Pi')' = -ddelta + (q_i^2/h_w)'' with the energy-flux boundary
/// values, by a second-order tridiagonal finite-difference scheme. ddelta
/// should come from scalar_rates(s, u, cfg).deta.
PressureProfile reconstruct_interior_pressure(const NonlinearState& s, double ddelta, double u,
                                              const PhysicalConfig& cfg, int n_cells = 200);

} // namespace floatctl
