#pragma once

#include <memory>

#include "floatctl/config.hpp"

namespace floatctl {

/// Nodal grid on the exterior domain E = (-L,-l) u (l,L'). Each component is
/// meshed with uniform elements; fields are nodal (piecewise linear between
/// nodes), so the transmission and wall conditions are imposed exactly at the
/// nodes x = -L, -l, l, L'.
///
/// "cells" counts elements on the left component; the right component gets a
/// count that keeps the spacing as close as possible (equal when L = L').
class ExteriorGrid {
public:
  ExteriorGrid(const PhysicalConfig& cfg, int cells_left);
  ExteriorGrid(double L, double l, double Lp, int n_minus, int n_plus);

  int n_minus() const { return n_minus_; } // elements on (-L,-l)
  int n_plus() const { return n_plus_; }   // elements on (l,L')
  double h_minus() const { return h_minus_; }
  double h_plus() const { return h_plus_; }
  double L() const { return L_; }
  double l() const { return l_; }
  double Lp() const { return Lp_; }

  int zeta_size() const { return n_minus_ + n_plus_ + 2; } // all nodes
  int q_size() const { return n_minus_ + n_plus_ - 2; }    // interior nodes only

  /// Node coordinate for the packed zeta layout: [left 0..n-, right 0..n+].
  double zeta_node(int j) const;
  /// Node coordinate for the packed interior-q layout:
  /// [left 1..n- -1, right 1..n+ -1].
  double q_node(int i) const;

  bool mirror_symmetric() const { return L_ == Lp_ && n_minus_ == n_plus_; }
  bool same_as(const ExteriorGrid& other) const;

private:
  int n_minus_, n_plus_;
  double h_minus_, h_plus_;
  double L_, l_, Lp_;
};

using GridPtr = std::shared_ptr<const ExteriorGrid>;

GridPtr make_grid(const PhysicalConfig& cfg, int cells_per_side = 200);

} // namespace floatctl
