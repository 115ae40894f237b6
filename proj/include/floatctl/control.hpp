#pragma once

#include <complex>
#include <memory>

#include "floatctl/modal.hpp"
#include "floatctl/simulate.hpp"

namespace floatctl {

/// B* z = eta / 2.
double b_star(const State& z);

/// Discrete control direction: the state B_h u with <B_h u, z>_X = u (eta/2)
/// exactly on the grid inner product (eta component ~ u / M_bar).
State apply_B(double u, const DiscreteGenerator& gen);

struct AuthorityReport {
  std::vector<double> authority; // |B* phi_hat_k| = gamma_k |psi_k(l)| / (2 l)
  double min_k_authority = 0.0;  // min_k k |B* phi_hat_k| (empirical Ingham constant)
  int argmin_k = 0;
};

AuthorityReport modal_authority(const std::vector<Mode>& modes);

/// Finite moment problem for the minimal-norm control: find u in L^2(0,tau)
/// with int_0^tau cos(w_k (tau-s)) u ds and int_0^tau sin(w_k (tau-s)) u ds
/// prescribed per mode; the solution lives in the span of those kernels and
/// the normal equations use the analytic exponential Gram matrix.
struct MomentProblem {
  double tau = 0.0;
  std::vector<double> omega; // mode frequencies
  std::vector<double> b;     // B* phi_hat_k per mode
  Eigen::VectorXd moment_cos, moment_sin;
  Eigen::MatrixXd gram; // 2N x 2N: basis (cos_1..cos_N, sin_1..sin_N)
  Eigen::VectorXd multipliers;
  double gram_condition = 0.0;
};

struct SteerOptions {
  double dt = 0.0;               // control sample step; 0: simulation default
  double gram_condition_limit = 1e13;
  double w_quotient_limit = 1e4; // difference-quotient norm vs ||z|| ratio warning
};

struct SteerResult {
  ControlSignal u;
  MomentProblem moments;
  ModalCoeffs target_coeffs;
  double modal_defect = 0.0;         // ||target_sym - P_span target_sym||_X
  double antisymmetric_defect = 0.0; // ||target - P_sym target||_X
  double gram_condition = 0.0;
  bool w_membership_warning = false;
  double w_quotient = 0.0;
  std::string warning;
};

/// Open-loop steering from rest to a symmetric target in time tau > tau0
/// using the first n_modes symmetric modes. Refuses tau <= tau0 (the
/// reachability horizon) and configurations with L != L'.
SteerResult steer(const State& target, double tau, int n_modes,
                  std::shared_ptr<const DiscreteGenerator> gen, SteerOptions opts = {});

struct ReachReport {
  double error_abs = 0.0;      // || z(tau) - target ||_X, full state (includes the
  double error_rel = 0.0;      // moment-truncation spillover into modes > N)
  double span_error_abs = 0.0; // || P_span (z(tau) - target) ||_X on the grid;
  double span_error_rel = 0.0; // refines as O(dt^2 + h^2) toward the modal defect
  double modal_error_abs = 0.0; // exact-signal modal dynamics vs target coefficients
  double modal_error_rel = 0.0;
  Eigen::VectorXd per_mode_error; // |coeff error| per mode (grid decomposition)
  State reached;
};

/// Simulates from rest with u and compares against the target, both on the
/// grid and in the modal metric (per-mode terminal coefficients computed by
/// exact convolution of the piecewise-linear control signal).
ReachReport verify_reach(const ControlSignal& u, const State& target, double tau,
                         std::shared_ptr<const DiscreteGenerator> gen, const ModeSet& modes);

/// Terminal modal coefficients reached from rest: exact convolution of the
/// piecewise-linear u against the modal rotation kernels.
ModalCoeffs modal_terminal_coeffs(const ControlSignal& u, const ModeSet& modes, double tau);

struct StabilizeOptions {
  double dt = 0.0;
  int norm_stride = 1;
  double fit_window_fraction = 0.5; // fit over the last fraction of the horizon
};

struct StabilizeResult {
  Trajectory trajectory; // closed-loop; u ledger holds the feedback values
  bool monotone = true;
  double fitted_exponent = 0.0; // p in ||z(t)|| ~ (1+t)^{-p}
};

/// Closed-loop integration with the feedback u = -B* z folded into the
/// implicit midpoint step (the closed-loop matrix is dissipative, so the norm
/// sequence is monotone by construction). Throws for an asymmetric z0 on a
/// symmetric configuration.
StabilizeResult stabilize(const State& z0, double T,
                          std::shared_ptr<const DiscreteGenerator> gen,
                          StabilizeOptions opts = {});

struct GramianReport {
  Eigen::MatrixXcd matrix;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
};

/// Finite section of Phi_tau Phi_tau^* on the given modes:
/// G_jk = int_0^tau e^{i (w_j - w_k) s} ds b_j conj(b_k), in closed form.
GramianReport gramian(double tau, const std::vector<Mode>& modes);

} // namespace floatctl
