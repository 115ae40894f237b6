#pragma once

#include <random>

#include "floatctl/generator.hpp"
#include "floatctl/state.hpp"

namespace floatctl::testing {

/// CFG0: the reference tank of the test suite.
inline PhysicalConfig cfg0() {
  return build_config(9.81, 1000.0, 2.0, 1.0, 10.0, 10.0, HeqProfile::flat(1.0));
}

/// CFG0 with unit density; same spectrum geometry, faster feedback time scale.
inline PhysicalConfig cfg0_unit_density() {
  return build_config(9.81, 1.0, 2.0, 1.0, 10.0, 10.0, HeqProfile::flat(1.0));
}

/// Asymmetric variant (L' != L) for general-branch coverage.
inline PhysicalConfig cfg_asym() {
  return build_config(9.81, 1000.0, 2.0, 1.0, 10.0, 7.0, HeqProfile::flat(1.0));
}

/// Random grid state satisfying the volume constraint.
inline State random_state(const GridPtr& grid, const PhysicalConfig& cfg, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  State z = State::zero(grid);
  for (int i = 0; i < z.zeta.size(); ++i) z.zeta[i] = dist(rng);
  for (int i = 0; i < z.q.size(); ++i) z.q[i] = dist(rng);
  z.qi_avg = dist(rng);
  z.eta = dist(rng);
  z.delta = 0.0;
  z.delta = -volume_residual(z) / (2.0 * cfg.l);
  return z;
}

/// Smooth constrained state (a localized bump, useful for conservation runs).
inline State bump_state(const GridPtr& grid, const PhysicalConfig& cfg, double center = -5.0,
                        double width = 1.0) {
  State z = State::zero(grid);
  for (int j = 0; j < z.zeta.size(); ++j) {
    const double x = grid->zeta_node(j);
    z.zeta[j] = std::exp(-0.5 * std::pow((x - center) / width, 2));
  }
  z.delta = -volume_residual(z) / (2.0 * cfg.l);
  return z;
}

} // namespace floatctl::testing
