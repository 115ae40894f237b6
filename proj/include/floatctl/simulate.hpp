#pragma once

#include <memory>
#include <vector>

#include "floatctl/control_signal.hpp"
#include "floatctl/generator.hpp"

namespace floatctl {

/// Time-indexed trajectory with the applied control and the energy ledger.
/// States are stored at a snapshot stride; scalar ledgers cover every step.
struct Trajectory {
  std::vector<double> times;       // every step endpoint
  std::vector<double> u;           // control at step endpoints
  std::vector<double> energy;      // variable energy <z,z>_X per step endpoint
  std::vector<double> work;        // cumulative ledger sum u eta dt (midpoint)
  std::vector<double> norms;       // ||z||_X per step endpoint
  std::vector<int> snapshot_steps; // step indices of stored states
  std::vector<State> snapshots;
  double max_energy_work_mismatch = 0.0; // max_n |E_n - E_0 - W_n|
  double max_volume_residual = 0.0;      // max_n |volume constraint residual|

  const State& final_state() const { return snapshots.back(); }
};

enum class TimeMethod { midpoint, rk4 };

struct SimulateOptions {
  double dt = 0.0;          // 0: default 0.2 h / sqrt(g h0)
  int snapshot_stride = 0;  // 0: choose so that <= 513 snapshots are kept
  TimeMethod method = TimeMethod::midpoint;
};

double default_dt(const ExteriorGrid& grid, const PhysicalConfig& cfg);

/// Integrates dz/dt = A z + B u from z0 over [0, T]. The implicit midpoint
/// rule conserves the X-norm exactly for u = 0 and satisfies the discrete
/// energy balance E_{n+1} - E_n = dt u_mid eta_mid to roundoff. RK4 is a
/// cross-check integrator only.
Trajectory simulate(const State& z0, const ControlSignal& u, double T,
                    std::shared_ptr<const DiscreteGenerator> gen, SimulateOptions opts = {});

} // namespace floatctl
