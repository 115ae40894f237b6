#include "floatctl/simulate.hpp"

#include <cmath>

#include "floatctl/errors.hpp"

namespace floatctl {

ControlSignal ControlSignal::zero(double dt, int n_samples) {
  ControlSignal u;
  u.dt = dt;
  u.samples.assign(std::max(0, n_samples), 0.0);
  return u;
}

ControlSignal ControlSignal::from_function(const std::function<double(double)>& f, double dt,
                                           int n_samples) {
  ControlSignal u;
  u.dt = dt;
  u.samples.resize(std::max(0, n_samples));
  for (int i = 0; i < n_samples; ++i) u.samples[i] = f(i * dt);
  return u;
}

double ControlSignal::operator()(double t) const {
  if (samples.empty() || dt <= 0) return 0.0;
  if (t <= 0) return samples.front() * (t == 0.0 ? 1.0 : 0.0);
  const double s = t / dt;
  const auto i = static_cast<long>(std::floor(s));
  if (i >= static_cast<long>(samples.size()) - 1)
    return (s <= samples.size() - 1 + 1e-9) ? samples.back() : 0.0;
  const double w = s - i;
  return (1 - w) * samples[i] + w * samples[i + 1];
}

double default_dt(const ExteriorGrid& grid, const PhysicalConfig& cfg) {
  return 0.2 * std::min(grid.h_minus(), grid.h_plus()) / cfg.wave_speed();
}

Trajectory simulate(const State& z0, const ControlSignal& u, double T,
                    std::shared_ptr<const DiscreteGenerator> gen, SimulateOptions opts) {
  const auto& cfg = gen->config();
  if (!z0.grid || !z0.grid->same_as(*gen->grid()))
    throw std::invalid_argument("simulate: initial state grid mismatch");
  check_volume_constraint(z0);

  const double dt = opts.dt > 0 ? opts.dt : default_dt(*gen->grid(), cfg);
  const int steps = std::max(1, static_cast<int>(std::ceil(T / dt - 1e-9)));
  int stride = opts.snapshot_stride;
  if (stride <= 0) stride = std::max(1, steps / 512);

  Trajectory traj;
  traj.times.reserve(steps + 1);
  traj.u.reserve(steps + 1);
  traj.energy.reserve(steps + 1);
  traj.work.reserve(steps + 1);
  traj.norms.reserve(steps + 1);

  MidpointStepper stepper(gen, dt, false);
  Eigen::VectorXd z = gen->pack(z0);
  const Eigen::VectorXd& rho_b = gen->control_functional();
  const int ie = gen->dim() - 1; // eta slot is packed last

  auto record = [&](int n, double t, double un, double E, double W, const Eigen::VectorXd& zv) {
    traj.times.push_back(t);
    traj.u.push_back(un);
    traj.energy.push_back(E);
    traj.work.push_back(W);
    traj.norms.push_back(std::sqrt(std::max(0.0, E)));
    if (n % stride == 0 || n == steps) {
      State s = gen->unpack(zv);
      traj.snapshot_steps.push_back(n);
      traj.snapshots.push_back(std::move(s));
    }
  };

  auto energy_of = [&](const Eigen::VectorXd& v) { return v.dot(gen->mass() * v); };

  double W = 0.0;
  const double E0 = energy_of(z);
  record(0, 0.0, u(0.0), E0, W, z);
  traj.max_volume_residual = std::abs(volume_residual(z0));

  for (int n = 0; n < steps; ++n) {
    const double tn = n * dt, tnp = (n + 1) * dt;
    const double un = u(tn), unp = u(tnp);
    const double eta_n = z[ie];
    Eigen::VectorXd znext;
    if (opts.method == TimeMethod::midpoint) {
      znext = stepper.step_packed(z, 0.5 * (un + unp));
    } else {
      // classical RK4 on dz/dt = M^{-1}(S z + rho_b u(t)); cross-check only
      auto rhs = [&](const Eigen::VectorXd& v, double t) {
        return gen->mass_solve((gen->skew() * v + u(t) * rho_b).eval());
      };
      const Eigen::VectorXd k1 = rhs(z, tn);
      const Eigen::VectorXd k2 = rhs(z + 0.5 * dt * k1, tn + 0.5 * dt);
      const Eigen::VectorXd k3 = rhs(z + 0.5 * dt * k2, tn + 0.5 * dt);
      const Eigen::VectorXd k4 = rhs(z + dt * k3, tnp);
      znext = z + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    const double eta_np = znext[ie];
    W += dt * 0.5 * (un + unp) * 0.5 * (eta_n + eta_np);
    z = std::move(znext);
    const double E = energy_of(z);
    record(n + 1, tnp, unp, E, W, z);
    traj.max_energy_work_mismatch =
        std::max(traj.max_energy_work_mismatch, std::abs(E - E0 - W));
  }

  for (const auto& s : traj.snapshots)
    traj.max_volume_residual = std::max(traj.max_volume_residual, std::abs(volume_residual(s)));
  return traj;
}

} // namespace floatctl
