#include "floatctl/nonlinear.hpp"

#include <cmath>
#include <sstream>

#include "floatctl/errors.hpp"
#include "floatctl/quadrature.hpp"

namespace floatctl {

NonlinearState NonlinearState::rest(GridPtr grid, const PhysicalConfig& cfg) {
  NonlinearState s;
  s.grid = std::move(grid);
  const int n = s.grid->n_minus() + s.grid->n_plus();
  s.h = Eigen::VectorXd::Constant(n, cfg.h0);
  s.q = Eigen::VectorXd::Zero(n);
  return s;
}

double NonlinearState::cell_center(int i) const {
  const auto& g = *grid;
  if (i < g.n_minus()) return -g.L() + (i + 0.5) * g.h_minus();
  return g.l() + (i - g.n_minus() + 0.5) * g.h_plus();
}

double NonlinearState::cell_width(int i) const {
  return i < grid->n_minus() ? grid->h_minus() : grid->h_plus();
}

CoefficientSet coefficients(double delta, const PhysicalConfig& cfg) {
  const double l = cfg.l;
  CoefficientSet c;
  if (cfg.h_eq.is_flat()) {
    const double hw = cfg.h_eq.flat_value() + delta;
    if (!(hw > 0)) throw NumericalError("coefficients: touchdown (h_eq + delta <= 0)");
    c.alpha = 1.0 / hw;
    c.alpha_prime = -1.0 / (hw * hw);
    c.beta = l * l / (6.0 * hw * hw);
    c.M = cfg.m + 2.0 * cfg.rho * l * l * l / (3.0 * hw);
    return c;
  }
  // sampled profiles are piecewise linear; a fixed composite rule suffices
  const int probes = 1024;
  for (int i = 0; i <= probes; ++i) {
    const double x = -l + 2.0 * l * i / probes;
    if (!(cfg.h_eq(x) + delta > 0))
      throw NumericalError("coefficients: touchdown (h_eq + delta <= 0)");
  }
  auto hw = [&](double x) { return cfg.h_eq(x) + delta; };
  c.alpha = trapezoid([&](double x) { return 1.0 / hw(x); }, -l, l, probes) / (2 * l);
  c.alpha_prime =
      -trapezoid([&](double x) { return 1.0 / (hw(x) * hw(x)); }, -l, l, probes) / (2 * l);
  c.beta = trapezoid([&](double x) { return x * x / (hw(x) * hw(x)); }, -l, l, probes) / (4 * l);
  c.M = cfg.m + cfg.rho * trapezoid([&](double x) { return x * x / hw(x); }, -l, l, probes);
  return c;
}

namespace {

struct Component {
  const double* h;
  const double* q;
  int n;
  double dx;
  // boundary roles: left end and right end are each either a wall or the
  // interface with prescribed discharge
  bool left_is_wall;
  double q_interface; // prescribed discharge at the non-wall end
};

struct FluxPair {
  double fh, fq;
};

FluxPair physical_flux(double h, double q, double g) {
  return {q, q * q / h + 0.5 * g * h * h};
}

FluxPair rusanov(double hL, double qL, double hR, double qR, double g) {
  const double cL = std::abs(qL / hL) + std::sqrt(g * hL);
  const double cR = std::abs(qR / hR) + std::sqrt(g * hR);
  const double a = std::max(cL, cR);
  const FluxPair FL = physical_flux(hL, qL, g);
  const FluxPair FR = physical_flux(hR, qR, g);
  return {0.5 * (FL.fh + FR.fh) - 0.5 * a * (hR - hL),
          0.5 * (FL.fq + FR.fq) - 0.5 * a * (qR - qL)};
}

// reconstructed face states of cell i toward its left/right faces
struct CellRecon {
  double hl, ql, hr, qr;
};

CellRecon reconstruct(const Component& c, int i, bool muscl) {
  CellRecon r{c.h[i], c.q[i], c.h[i], c.q[i]};
  if (!muscl || c.n < 3) return r;
  auto slope = [&](const double* u) {
    if (i == 0) return u[1] - u[0];
    if (i == c.n - 1) return u[i] - u[i - 1];
    return 0.5 * (u[i + 1] - u[i - 1]);
  };
  const double sh = slope(c.h), sq = slope(c.q);
  r.hl = c.h[i] - 0.5 * sh;
  r.hr = c.h[i] + 0.5 * sh;
  r.ql = c.q[i] - 0.5 * sq;
  r.qr = c.q[i] + 0.5 * sq;
  return r;
}

struct ComponentRates {
  Eigen::VectorXd dh, dq;
};

// flux-differenced rates for one component; the mass flux through the
// interface face is exactly the prescribed discharge
ComponentRates component_rates(const Component& c, double g, const NonlinearOptions& opts) {
  ComponentRates rates;
  rates.dh = Eigen::VectorXd::Zero(c.n);
  rates.dq = Eigen::VectorXd::Zero(c.n);
  std::vector<FluxPair> F(c.n + 1);

  std::vector<CellRecon> rec(c.n);
  for (int i = 0; i < c.n; ++i) rec[i] = reconstruct(c, i, opts.muscl);

  for (int f = 1; f < c.n; ++f) F[f] = rusanov(rec[f - 1].hr, rec[f - 1].qr, rec[f].hl, rec[f].ql, g);

  // left end
  if (c.left_is_wall) {
    const double h = rec[0].hl, q = rec[0].ql;
    F[0] = rusanov(h, -q, h, q, g); // mirror ghost; mass flux vanishes exactly
    F[0].fh = 0.0;
  } else {
    const double h = rec[0].hl, q = rec[0].ql;
    F[0] = rusanov(h, 2.0 * c.q_interface - q, h, q, g);
    F[0].fh = c.q_interface;
  }
  // right end
  if (!c.left_is_wall) { // right end is the wall
    const double h = rec[c.n - 1].hr, q = rec[c.n - 1].qr;
    F[c.n] = rusanov(h, q, h, -q, g);
    F[c.n].fh = 0.0;
  } else { // right end is the interface
    const double h = rec[c.n - 1].hr, q = rec[c.n - 1].qr;
    F[c.n] = rusanov(h, q, h, 2.0 * c.q_interface - q, g);
    F[c.n].fh = c.q_interface;
  }

  for (int i = 0; i < c.n; ++i) {
    rates.dh[i] = -(F[i + 1].fh - F[i].fh) / c.dx;
    rates.dq[i] = -(F[i + 1].fq - F[i].fq) / c.dx;
  }
  return rates;
}

struct FullRates {
  Eigen::VectorXd dh, dq;
  ScalarRates scalars;
};

void validate_state(const NonlinearState& s, const PhysicalConfig& cfg,
                    const NonlinearOptions& opts) {
  if (s.h.minCoeff() <= 0) throw NumericalError("nonlinear step: drying (h <= 0)");
  // touchdown handled by coefficients(); smoothness guard on u +- c jumps
  const double c0 = cfg.wave_speed();
  double max_jump = 0.0;
  auto scan = [&](int begin, int end) {
    for (int i = begin; i + 1 < end; ++i) {
      const double u0 = s.q[i] / s.h[i], u1 = s.q[i + 1] / s.h[i + 1];
      const double a0 = std::sqrt(cfg.g * s.h[i]), a1 = std::sqrt(cfg.g * s.h[i + 1]);
      max_jump = std::max(max_jump, std::abs((u1 + a1) - (u0 + a0)));
      max_jump = std::max(max_jump, std::abs((u1 - a1) - (u0 - a0)));
    }
  };
  scan(0, s.grid->n_minus());
  scan(s.grid->n_minus(), s.cells());
  if (max_jump > opts.shock_jump_limit * c0) {
    std::ostringstream os;
    os << "nonlinear step: wave-speed jump " << max_jump << " exceeds " << opts.shock_jump_limit
       << " * sqrt(g h0); shock formation suspected (smooth-solution regime only)";
    throw NumericalError(os.str());
  }
}

FullRates full_rates(const NonlinearState& s, double u, const PhysicalConfig& cfg,
                     const NonlinearOptions& opts) {
  FullRates r;
  const int nm = s.grid->n_minus();
  const int np = s.grid->n_plus();
  const double q_minus = s.qi_avg + cfg.l * s.eta; // q(-l)
  const double q_plus = s.qi_avg - cfg.l * s.eta;  // q(+l)

  Component left{s.h.data(), s.q.data(), nm, s.grid->h_minus(), true, q_minus};
  Component right{s.h.data() + nm, s.q.data() + nm, np, s.grid->h_plus(), false, q_plus};
  const ComponentRates rl = component_rates(left, cfg.g, opts);
  const ComponentRates rr = component_rates(right, cfg.g, opts);
  r.dh.resize(nm + np);
  r.dq.resize(nm + np);
  r.dh << rl.dh, rr.dh;
  r.dq << rl.dq, rr.dq;
  r.scalars = scalar_rates(s, u, cfg);
  return r;
}

} // namespace

InterfaceTraces interface_traces(const NonlinearState& s, const PhysicalConfig& cfg) {
  const int nm = s.grid->n_minus();
  const int np = s.grid->n_plus();
  // second-order extrapolation of the depth to the interface faces
  const double h_minus = nm >= 2 ? 1.5 * s.h[nm - 1] - 0.5 * s.h[nm - 2] : s.h[nm - 1];
  const double h_plus = np >= 2 ? 1.5 * s.h[nm] - 0.5 * s.h[nm + 1] : s.h[nm];
  const double q_minus = s.qi_avg + cfg.l * s.eta;
  const double q_plus = s.qi_avg - cfg.l * s.eta;
  InterfaceTraces t;
  t.zeta_minus = h_minus - cfg.h0;
  t.zeta_plus = h_plus - cfg.h0;
  t.bern_minus = 0.5 * cfg.rho * q_minus * q_minus / (h_minus * h_minus);
  t.bern_plus = 0.5 * cfg.rho * q_plus * q_plus / (h_plus * h_plus);
  return t;
}

ScalarRates scalar_rates(const NonlinearState& s, double u, const PhysicalConfig& cfg) {
  const CoefficientSet co = coefficients(s.delta, cfg);
  const InterfaceTraces t = interface_traces(s, cfg);
  const double head_minus = cfg.rho * cfg.g * t.zeta_minus + t.bern_minus;
  const double head_plus = cfg.rho * cfg.g * t.zeta_plus + t.bern_plus;
  const double jump = head_plus - head_minus;
  const double avg = 0.5 * (head_plus + head_minus);

  ScalarRates r;
  r.dqi_avg = (-jump / (2.0 * cfg.rho * cfg.l) - co.alpha_prime * s.eta * s.qi_avg) / co.alpha;
  r.ddelta = s.eta;
  r.deta = (2.0 * cfg.l * avg + u + 2.0 * cfg.rho * cfg.l * co.beta * s.eta * s.eta -
            2.0 * cfg.rho * cfg.g * cfg.l * s.delta +
            cfg.rho * cfg.l * co.alpha_prime * s.qi_avg * s.qi_avg) /
           co.M;
  return r;
}

double max_stable_dt(const NonlinearState& s, const PhysicalConfig& cfg,
                     const NonlinearOptions& opts) {
  double speed = 0.0;
  for (int i = 0; i < s.cells(); ++i)
    speed = std::max(speed, std::abs(s.q[i] / s.h[i]) + std::sqrt(cfg.g * s.h[i]));
  const double dx = std::min(s.grid->h_minus(), s.grid->h_plus());
  return opts.cfl * dx / speed;
}

NonlinearState step_nonlinear(const NonlinearState& s, double u_n, double u_np1, double dt,
                              const PhysicalConfig& cfg, const NonlinearOptions& opts) {
  if (!(dt > 0)) throw std::invalid_argument("step_nonlinear: dt must be positive");
  if (dt > max_stable_dt(s, cfg, opts) * (1 + 1e-12)) {
    std::ostringstream os;
    os << "CFL violation: dt = " << dt << " exceeds " << max_stable_dt(s, cfg, opts);
    throw NumericalError(os.str());
  }
  validate_state(s, cfg, opts);

  const FullRates k1 = full_rates(s, u_n, cfg, opts);
  NonlinearState mid = s;
  mid.h += dt * k1.dh;
  mid.q += dt * k1.dq;
  mid.qi_avg += dt * k1.scalars.dqi_avg;
  mid.delta += dt * k1.scalars.ddelta;
  mid.eta += dt * k1.scalars.deta;
  if (mid.h.minCoeff() <= 0) throw NumericalError("nonlinear step: drying (h <= 0)");

  const FullRates k2 = full_rates(mid, u_np1, cfg, opts);
  NonlinearState out = s;
  out.h += 0.5 * dt * (k1.dh + k2.dh);
  out.q += 0.5 * dt * (k1.dq + k2.dq);
  out.qi_avg += 0.5 * dt * (k1.scalars.dqi_avg + k2.scalars.dqi_avg);
  out.delta += 0.5 * dt * (k1.scalars.ddelta + k2.scalars.ddelta);
  out.eta += 0.5 * dt * (k1.scalars.deta + k2.scalars.deta);
  out.time = s.time + dt;
  if (out.h.minCoeff() <= 0) throw NumericalError("nonlinear step: drying (h <= 0)");
  return out;
}

NonlinearTrajectory simulate_nonlinear(const NonlinearState& s0, const ControlSignal& u, double T,
                                       const PhysicalConfig& cfg, NonlinearRunOptions opts) {
  NonlinearTrajectory traj;
  NonlinearState s = s0;
  double dt = opts.dt > 0 ? opts.dt : 0.9 * max_stable_dt(s0, cfg, opts.scheme);
  const int steps = std::max(1, static_cast<int>(std::ceil(T / dt - 1e-9)));
  dt = T / steps;
  int stride = opts.snapshot_stride > 0 ? opts.snapshot_stride : std::max(1, steps / 256);

  const double V0 = total_volume(s0, cfg);
  traj.times.push_back(0.0);
  traj.volume.push_back(V0);
  traj.energy.push_back(nonlinear_energy(s0, cfg));
  traj.snapshot_steps.push_back(0);
  traj.snapshots.push_back(s0);

  for (int n = 0; n < steps; ++n) {
    s = step_nonlinear(s, u(n * dt), u((n + 1) * dt), dt, cfg, opts.scheme);
    const double V = total_volume(s, cfg);
    traj.times.push_back(s.time);
    traj.volume.push_back(V);
    traj.energy.push_back(nonlinear_energy(s, cfg));
    traj.max_volume_drift_rel =
        std::max(traj.max_volume_drift_rel, std::abs(V - V0) / std::abs(V0));
    if ((n + 1) % stride == 0 || n + 1 == steps) {
      traj.snapshot_steps.push_back(n + 1);
      traj.snapshots.push_back(s);
    }
  }
  return traj;
}

double total_volume(const NonlinearState& s, const PhysicalConfig& cfg) {
  double v = 0.0;
  for (int i = 0; i < s.cells(); ++i) v += s.h[i] * s.cell_width(i);
  // int h_eq = 2 l h0 - m/rho by the equilibrium mass relation
  const double interior = 2.0 * cfg.l * cfg.h0 - cfg.m / cfg.rho + 2.0 * cfg.l * s.delta;
  return v + interior;
}

double nonlinear_energy(const NonlinearState& s, const PhysicalConfig& cfg) {
  // exterior fluid energy plus the interior/solid part reduced in closed form
  // through alpha(delta), M(delta), referenced to the rest state
  double e = 0.0;
  for (int i = 0; i < s.cells(); ++i) {
    const double zeta = s.h[i] - cfg.h0;
    e += 0.5 * cfg.rho * (cfg.g * zeta * zeta + s.q[i] * s.q[i] / s.h[i]) * s.cell_width(i);
  }
  const CoefficientSet co = coefficients(s.delta, cfg);
  e += cfg.rho * cfg.g * cfg.l * s.delta * s.delta + 0.5 * co.M * s.eta * s.eta +
       cfg.rho * cfg.l * co.alpha * s.qi_avg * s.qi_avg;
  return e;
}

NonlinearState nonlinear_from_linear(const State& z, const PhysicalConfig& cfg) {
  NonlinearState s;
  s.grid = z.grid;
  const auto& g = *z.grid;
  const int nm = g.n_minus(), np = g.n_plus();
  s.h.resize(nm + np);
  s.q.resize(nm + np);
  const Eigen::VectorXd ql = q_full_component(z, -1);
  const Eigen::VectorXd qr = q_full_component(z, +1);
  for (int i = 0; i < nm; ++i) {
    s.h[i] = cfg.h0 + 0.5 * (z.zeta[i] + z.zeta[i + 1]);
    s.q[i] = 0.5 * (ql[i] + ql[i + 1]);
  }
  for (int i = 0; i < np; ++i) {
    const int base = nm + 1;
    s.h[nm + i] = cfg.h0 + 0.5 * (z.zeta[base + i] + z.zeta[base + i + 1]);
    s.q[nm + i] = 0.5 * (qr[i] + qr[i + 1]);
  }
  s.qi_avg = z.qi_avg;
  s.delta = z.delta;
  s.eta = z.eta;
  return s;
}

State linear_from_nonlinear(const NonlinearState& s, const PhysicalConfig& cfg) {
  State z = State::zero(s.grid);
  const auto& g = *s.grid;
  const int nm = g.n_minus(), np = g.n_plus();
  auto node_from_cells = [](const Eigen::VectorXd& c, int begin, int n, int j) {
    // nodal value j (0..n) from cell averages begin..begin+n-1
    if (j == 0) return 1.5 * c[begin] - 0.5 * c[begin + 1];
    if (j == n) return 1.5 * c[begin + n - 1] - 0.5 * c[begin + n - 2];
    return 0.5 * (c[begin + j - 1] + c[begin + j]);
  };
  for (int j = 0; j <= nm; ++j) z.zeta[j] = node_from_cells(s.h, 0, nm, j) - cfg.h0;
  for (int j = 0; j <= np; ++j) z.zeta[nm + 1 + j] = node_from_cells(s.h, nm, np, j) - cfg.h0;
  for (int j = 1; j < nm; ++j) z.q[j - 1] = node_from_cells(s.q, 0, nm, j);
  for (int j = 1; j < np; ++j) z.q[nm - 1 + j - 1] = node_from_cells(s.q, nm, np, j);
  z.qi_avg = s.qi_avg;
  z.delta = s.delta;
  z.eta = s.eta;
  return z;
}

} // namespace floatctl
