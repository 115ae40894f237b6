#include "floatctl/grid.hpp"

#include <cmath>

#include "floatctl/errors.hpp"

namespace floatctl {

ExteriorGrid::ExteriorGrid(const PhysicalConfig& cfg, int cells_left) {
  if (cells_left < 4) throw ConfigError("grid too coarse: need at least 4 cells per side");
  L_ = cfg.L;
  l_ = cfg.l;
  Lp_ = cfg.Lp;
  n_minus_ = cells_left;
  h_minus_ = (L_ - l_) / n_minus_;
  n_plus_ = std::max(4, static_cast<int>(std::lround((Lp_ - l_) / h_minus_)));
  h_plus_ = (Lp_ - l_) / n_plus_;
}

ExteriorGrid::ExteriorGrid(double L, double l, double Lp, int n_minus, int n_plus) {
  if (n_minus < 4 || n_plus < 4) throw ConfigError("grid too coarse: need at least 4 cells per side");
  if (!(l > 0) || !(l < std::min(L, Lp))) throw ConfigError("grid geometry requires 0 < l < min(L, L')");
  L_ = L;
  l_ = l;
  Lp_ = Lp;
  n_minus_ = n_minus;
  n_plus_ = n_plus;
  h_minus_ = (L_ - l_) / n_minus_;
  h_plus_ = (Lp_ - l_) / n_plus_;
}

double ExteriorGrid::zeta_node(int j) const {
  if (j <= n_minus_) return -L_ + j * h_minus_;
  return l_ + (j - n_minus_ - 1) * h_plus_;
}

double ExteriorGrid::q_node(int i) const {
  if (i < n_minus_ - 1) return -L_ + (i + 1) * h_minus_;
  return l_ + (i - (n_minus_ - 1) + 1) * h_plus_;
}

bool ExteriorGrid::same_as(const ExteriorGrid& other) const {
  return n_minus_ == other.n_minus_ && n_plus_ == other.n_plus_ && L_ == other.L_ &&
         l_ == other.l_ && Lp_ == other.Lp_;
}

GridPtr make_grid(const PhysicalConfig& cfg, int cells_per_side) {
  return std::make_shared<ExteriorGrid>(cfg, cells_per_side);
}

} // namespace floatctl
