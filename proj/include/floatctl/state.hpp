#pragma once

#include <Eigen/Dense>

#include "floatctl/grid.hpp"

namespace floatctl {

enum class SymmetryClass { general, symmetric };

/// Grid sampling of the evolution state z = (zeta, q, <q_i>, delta, eta).
///
/// zeta carries all nodes of both components; q carries interior nodes only.
/// The piecewise-linear representative of q takes the wall values
/// q(-L) = q(L') = 0 and the interface values q(-l) = <q_i> + l eta,
/// q(l) = <q_i> - l eta, i.e. the transmission conditions are built into the
/// representative. All values are real.
struct State {
  GridPtr grid;
  Eigen::VectorXd zeta; // size grid->zeta_size()
  Eigen::VectorXd q;    // size grid->q_size()
  double qi_avg = 0.0;  // <q_i>
  double delta = 0.0;
  double eta = 0.0;

  static State zero(GridPtr grid);

  /// Interface values of the q representative.
  double q_at_minus_l() const { return qi_avg + grid->l() * eta; }
  double q_at_plus_l() const { return qi_avg - grid->l() * eta; }

  State& operator+=(const State& other);
  State& operator-=(const State& other);
  State& operator*=(double a);
};

State operator+(State a, const State& b);
State operator-(State a, const State& b);
State operator*(double a, State z);

/// X inner product: (rho g/2)<zeta,zeta'> + (rho/2h0)<q,q'> +
/// rho l alpha_bar <q_i><q_i'> + rho g l delta delta' + (M_bar/2) eta eta',
/// field integrals evaluated exactly for the piecewise-linear representatives.
/// Throws on grid mismatch.
double inner_product(const State& a, const State& b, const PhysicalConfig& cfg);

double norm(const State& z, const PhysicalConfig& cfg);

struct EnergyBreakdown {
  double total;    // variable + offset
  double variable; // equals inner_product(z, z)
  double offset;   // (rho g/2) * int_I (h_eq - h0)^2 dx
};

/// Total energy of the linearized system, with the constant offset reported
/// separately (only the variable part evolves).
EnergyBreakdown total_energy(const State& z, const PhysicalConfig& cfg);

/// int_E zeta dx + 2 l delta (volume constraint; zero for states in X).
double volume_residual(const State& z);

/// Scale used for relative volume-constraint checks.
double volume_scale(const State& z);

/// Asserts |volume_residual| <= tol * volume_scale, throws NumericalError
/// otherwise. Shared helper used by every module that returns States.
void check_volume_constraint(const State& z, double rel_tol = 1e-8);

/// Orthogonal projection onto the mirror-symmetric subspace: zeta -> even
/// part, q -> odd part, <q_i> -> 0, delta and eta unchanged. Requires L = L'
/// and a mirror-symmetric grid.
State project_symmetric(const State& z);

/// ||z - P z||_X, the antisymmetric-component norm.
double asymmetry_norm(const State& z, const PhysicalConfig& cfg);

/// The q representative on all nodes of one component (boundary values filled
/// from the scalars). side: -1 left component, +1 right component.
Eigen::VectorXd q_full_component(const State& z, int side);

} // namespace floatctl
