#pragma once

#include <complex>
#include <vector>

#include "floatctl/spectral.hpp"

namespace floatctl {

/// Real modal coefficients of a state on the span of a mode set: per mode the
/// pair (a_p, a_r) with z = sum_k a_p,k p_k + a_r,k r_k. The complex
/// coefficient of the +k eigenvector is (a_p - i a_r)/sqrt(2).
struct ModalCoeffs {
  Eigen::VectorXd a_p, a_r;
  std::complex<double> complex_coeff(int k) const {
    return {a_p[k] / std::sqrt(2.0), -a_r[k] / std::sqrt(2.0)};
  }
  double l2_norm() const { return std::sqrt(a_p.squaredNorm() + a_r.squaredNorm()); }
};

/// Grid sampling of a set of modes with the Gram machinery for projection.
/// Decomposition solves the grid Gram system, so synthesize/decompose is an
/// exact round trip on the modal span regardless of quadrature error. The
/// constructor rejects mode sets whose grid Gram is far from the identity.
class ModeSet {
public:
  ModeSet(std::vector<Mode> modes, GridPtr grid, const PhysicalConfig& cfg);

  int count() const { return static_cast<int>(modes_.size()); }
  const Mode& mode(int k) const { return modes_[k]; }
  const std::vector<Mode>& modes() const { return modes_; }
  const ModePair& pair(int k) const { return pairs_[k]; }
  const GridPtr& grid() const { return grid_; }

  /// Gram-corrected projection coefficients of z onto the modal span.
  ModalCoeffs decompose(const State& z) const;

  /// sum_k [cos(w_k t) a_p + sin(w_k t) a_r] p_k + [-sin(w_k t) a_p + cos(w_k t) a_r] r_k,
  /// the evolution of the coefficients under the unitary group.
  State synthesize(const ModalCoeffs& c, double t) const;

  ModalCoeffs evolve(const ModalCoeffs& c, double t) const;

  /// ||z - P_span z||_X, the off-span defect of a state.
  double span_defect(const State& z) const;

private:
  std::vector<Mode> modes_;
  GridPtr grid_;
  PhysicalConfig cfg_;
  std::vector<ModePair> pairs_;
  Eigen::MatrixXd gram_p_, gram_r_;
  Eigen::LLT<Eigen::MatrixXd> gram_p_llt_, gram_r_llt_;
};

} // namespace floatctl
