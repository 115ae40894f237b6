#include "floatctl/modal.hpp"

#include <cmath>

#include "floatctl/errors.hpp"

namespace floatctl {

ModeSet::ModeSet(std::vector<Mode> modes, GridPtr grid, const PhysicalConfig& cfg)
    : modes_(std::move(modes)), grid_(std::move(grid)), cfg_(cfg) {
  const int n = count();
  if (n == 0) throw std::invalid_argument("ModeSet: empty mode list");
  pairs_.reserve(n);
  for (const auto& m : modes_) pairs_.push_back(sample_mode_pair(m, grid_));

  gram_p_.resize(n, n);
  gram_r_.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      gram_p_(i, j) = gram_p_(j, i) = inner_product(pairs_[i].p, pairs_[j].p, cfg_);
      gram_r_(i, j) = gram_r_(j, i) = inner_product(pairs_[i].r, pairs_[j].r, cfg_);
    }
  }
  // p/r blocks are structurally orthogonal (disjoint state slots), so the two
  // Grams fully describe the span geometry
  for (int i = 0; i < n; ++i) {
    if (std::abs(gram_p_(i, i) - 1.0) > 0.2 || std::abs(gram_r_(i, i) - 1.0) > 0.2)
      throw std::invalid_argument("ModeSet: modes not normalized on this grid");
    for (int j = 0; j < i; ++j)
      if (std::abs(gram_p_(i, j)) > 0.5 || std::abs(gram_r_(i, j)) > 0.5)
        throw std::invalid_argument("ModeSet: mode set far from orthonormal");
  }
  gram_p_llt_.compute(gram_p_);
  gram_r_llt_.compute(gram_r_);
  if (gram_p_llt_.info() != Eigen::Success || gram_r_llt_.info() != Eigen::Success)
    throw NumericalError("ModeSet: Gram factorization failed");
}

ModalCoeffs ModeSet::decompose(const State& z) const {
  const int n = count();
  Eigen::VectorXd bp(n), br(n);
  for (int k = 0; k < n; ++k) {
    bp[k] = inner_product(z, pairs_[k].p, cfg_);
    br[k] = inner_product(z, pairs_[k].r, cfg_);
  }
  ModalCoeffs c;
  c.a_p = gram_p_llt_.solve(bp);
  c.a_r = gram_r_llt_.solve(br);
  return c;
}

ModalCoeffs ModeSet::evolve(const ModalCoeffs& c, double t) const {
  const int n = count();
  ModalCoeffs out;
  out.a_p.resize(n);
  out.a_r.resize(n);
  for (int k = 0; k < n; ++k) {
    const double th = modes_[k].omega * t;
    const double cs = std::cos(th), sn = std::sin(th);
    out.a_p[k] = cs * c.a_p[k] + sn * c.a_r[k];
    out.a_r[k] = -sn * c.a_p[k] + cs * c.a_r[k];
  }
  return out;
}

State ModeSet::synthesize(const ModalCoeffs& c, double t) const {
  const ModalCoeffs ct = evolve(c, t);
  State z = State::zero(grid_);
  for (int k = 0; k < count(); ++k) {
    z += ct.a_p[k] * pairs_[k].p;
    z += ct.a_r[k] * pairs_[k].r;
  }
  return z;
}

double ModeSet::span_defect(const State& z) const {
  const ModalCoeffs c = decompose(z);
  return norm(z - synthesize(c, 0.0), cfg_);
}

} // namespace floatctl
