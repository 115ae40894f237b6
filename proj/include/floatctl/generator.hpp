#pragma once

#include <Eigen/Sparse>
#include <memory>

#include "floatctl/state.hpp"

namespace floatctl {

/// Discretization of the generator A on a grid, A_h = M^{-1} S with S exactly
/// antisymmetric (Galerkin form of the skew bilinear pairing) and M the inner
/// product matrix of the nodal states. Consequences, exact up to roundoff:
/// <A_h z, z>_X = 0 for every grid state, the Cayley (implicit midpoint) flow
/// is an X-isometry, and the volume constraint is preserved.
class DiscreteGenerator {
public:
  DiscreteGenerator(const PhysicalConfig& cfg, GridPtr grid);

  const PhysicalConfig& config() const { return cfg_; }
  const GridPtr& grid() const { return grid_; }
  int dim() const { return dim_; }

  Eigen::VectorXd pack(const State& z) const;
  State unpack(const Eigen::VectorXd& v) const;

  /// A_h z.
  State apply(const State& z) const;

  const Eigen::SparseMatrix<double>& mass() const { return mass_; }
  const Eigen::SparseMatrix<double>& skew() const { return skew_; }

  /// Control functional: <B u, z>_X = u * rho_B . z exactly (eta slot, 1/2).
  const Eigen::VectorXd& control_functional() const { return rho_b_; }

  /// Discrete control direction B_h = M^{-1} rho_B (exact adjoint of eta/2).
  State control_state() const;

  Eigen::VectorXd mass_solve(const Eigen::VectorXd& rhs) const;

private:
  PhysicalConfig cfg_;
  GridPtr grid_;
  int dim_;
  int ic_, id_, ie_; // packed indices of <q_i>, delta, eta
  Eigen::SparseMatrix<double> mass_, skew_;
  Eigen::VectorXd mass_diag_;
  Eigen::VectorXd rho_b_;

  friend class MidpointStepper;
};

/// Cached implicit-midpoint step operator for a fixed (generator, dt) pair:
/// (M - dt/2 C) z' = (M + dt/2 C) z + dt rho_B u_mid, where C = S for the
/// open loop and C = S - rho_B rho_B^T for the closed loop u = -B* z.
class MidpointStepper {
public:
  MidpointStepper(std::shared_ptr<const DiscreteGenerator> gen, double dt,
                  bool closed_loop = false);

  double dt() const { return dt_; }
  const DiscreteGenerator& generator() const { return *gen_; }

  /// One step with trapezoidal control samples u_n, u_{n+1} (ignored in the
  /// closed loop, where the feedback is folded into the matrix).
  State step(const State& z, double u_n = 0.0, double u_np1 = 0.0) const;

  Eigen::VectorXd step_packed(const Eigen::VectorXd& z, double u_mid) const;

private:
  std::shared_ptr<const DiscreteGenerator> gen_;
  double dt_;
  bool closed_loop_;
  Eigen::SparseMatrix<double> forward_; // M + dt/2 C
  Eigen::SparseLU<Eigen::SparseMatrix<double>> backward_lu_;
};

} // namespace floatctl
