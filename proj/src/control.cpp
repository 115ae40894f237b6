#include "floatctl/control.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "floatctl/errors.hpp"

namespace floatctl {

double b_star(const State& z) { return 0.5 * z.eta; }

State apply_B(double u, const DiscreteGenerator& gen) {
  State b = gen.control_state();
  b *= u;
  return b;
}

AuthorityReport modal_authority(const std::vector<Mode>& modes) {
  AuthorityReport rep;
  rep.authority.reserve(modes.size());
  rep.min_k_authority = std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < modes.size(); ++k) {
    const double a = modes[k].control_authority();
    rep.authority.push_back(a);
    const double ka = (k + 1) * a;
    if (ka < rep.min_k_authority) {
      rep.min_k_authority = ka;
      rep.argmin_k = static_cast<int>(k + 1);
    }
  }
  return rep;
}

namespace {

// int_0^tau cos(wj t) cos(wk t) dt and friends (t = tau - s substitution maps
// the kernels to plain cosines/sines)
double sinc_diff(double w, double tau) { return w == 0.0 ? tau : std::sin(w * tau) / w; }

double gram_cc(double wj, double wk, double tau) {
  return 0.5 * (sinc_diff(wj - wk, tau) + sinc_diff(wj + wk, tau));
}
double gram_ss(double wj, double wk, double tau) {
  return 0.5 * (sinc_diff(wj - wk, tau) - sinc_diff(wj + wk, tau));
}
double cosc(double w, double tau) { return w == 0.0 ? 0.0 : (1.0 - std::cos(w * tau)) / w; }
// <cos_j, sin_k> = int cos(wj t) sin(wk t) dt
double gram_cs(double wj, double wk, double tau) {
  return 0.5 * (cosc(wk + wj, tau) + cosc(wk - wj, tau));
}

} // namespace

SteerResult steer(const State& target, double tau, int n_modes,
                  std::shared_ptr<const DiscreteGenerator> gen, SteerOptions opts) {
  const auto& cfg = gen->config();
  if (!cfg.symmetric()) throw std::invalid_argument("steer requires the symmetric geometry L = L'");
  if (!(tau > cfg.tau0)) {
    std::ostringstream os;
    os << "steer: horizon tau = " << tau << " must exceed tau0 = " << cfg.tau0
       << " (minimal reachability horizon 2(L-l)/sqrt(g h0))";
    throw std::invalid_argument(os.str());
  }
  if (n_modes < 1) throw std::invalid_argument("steer: need at least one mode");

  SteerResult res;

  // W-membership diagnostic: bounded difference quotients (transmission and
  // wall conditions hold for every grid state by construction)
  {
    const auto& g = *target.grid;
    double h1 = 0.0;
    const int nzl = g.n_minus() + 1;
    for (int j = 0; j + 1 < nzl; ++j)
      h1 += std::pow((target.zeta[j + 1] - target.zeta[j]) / g.h_minus(), 2) * g.h_minus();
    for (int j = nzl; j + 1 < target.zeta.size(); ++j)
      h1 += std::pow((target.zeta[j + 1] - target.zeta[j]) / g.h_plus(), 2) * g.h_plus();
    const Eigen::VectorXd ql = q_full_component(target, -1), qr = q_full_component(target, +1);
    for (int j = 0; j + 1 < ql.size(); ++j)
      h1 += std::pow((ql[j + 1] - ql[j]) / g.h_minus(), 2) * g.h_minus();
    for (int j = 0; j + 1 < qr.size(); ++j)
      h1 += std::pow((qr[j + 1] - qr[j]) / g.h_plus(), 2) * g.h_plus();
    const double nrm = norm(target, cfg) + 1e-300;
    res.w_quotient = std::sqrt(h1) / nrm;
    if (res.w_quotient > opts.w_quotient_limit) {
      res.w_membership_warning = true;
      res.warning = "target difference-quotient norm is large; W membership doubtful";
    }
  }

  const State target_sym = project_symmetric(target);
  res.antisymmetric_defect = norm(target - target_sym, cfg);
  if (res.antisymmetric_defect > 1e-12 * (norm(target, cfg) + 1e-300)) {
    if (!res.warning.empty()) res.warning += "; ";
    res.warning += "antisymmetric target component projected away (out of the reachable set)";
  }

  // symmetric modes sampled on the generator grid
  const auto omegas = find_eigenvalues(cfg, n_modes, SymmetryClass::symmetric);
  std::vector<Mode> modes;
  modes.reserve(omegas.size());
  for (size_t k = 0; k < omegas.size(); ++k)
    modes.push_back(assemble_mode(omegas[k], cfg, SymmetryClass::symmetric,
                                  static_cast<int>(k + 1)));
  ModeSet set(modes, gen->grid(), cfg);

  res.target_coeffs = set.decompose(target_sym);
  res.modal_defect = norm(target_sym - set.synthesize(res.target_coeffs, 0.0), cfg);

  MomentProblem mp;
  mp.tau = tau;
  mp.omega = omegas;
  mp.b.reserve(modes.size());
  for (const auto& m : modes) mp.b.push_back(m.control_authority());

  const int N = n_modes;
  mp.moment_cos.resize(N);
  mp.moment_sin.resize(N);
  for (int k = 0; k < N; ++k) {
    const double bk = std::sqrt(2.0) * modes[k].gamma * modes[k].b / 2.0; // signed sqrt(2) B* phi
    if (bk == 0.0)
      throw NumericalError("steer: mode with vanishing control authority (B* phi = 0)");
    mp.moment_cos[k] = res.target_coeffs.a_p[k] / bk;
    mp.moment_sin[k] = -res.target_coeffs.a_r[k] / bk;
  }

  mp.gram.resize(2 * N, 2 * N);
  for (int j = 0; j < N; ++j) {
    for (int k = 0; k < N; ++k) {
      mp.gram(j, k) = gram_cc(mp.omega[j], mp.omega[k], tau);
      mp.gram(N + j, N + k) = gram_ss(mp.omega[j], mp.omega[k], tau);
      mp.gram(j, N + k) = gram_cs(mp.omega[j], mp.omega[k], tau);
      mp.gram(N + k, j) = mp.gram(j, N + k);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mp.gram);
  const double lmin = es.eigenvalues().minCoeff();
  const double lmax = es.eigenvalues().maxCoeff();
  mp.gram_condition = (lmin > 0) ? lmax / lmin : std::numeric_limits<double>::infinity();
  res.gram_condition = mp.gram_condition;
  if (!(lmin > 0) || mp.gram_condition > opts.gram_condition_limit) {
    std::ostringstream os;
    os << "steer: moment Gram condition number " << mp.gram_condition
       << " exceeds the limit; reduce the mode count (n_modes = " << N << ")";
    throw NumericalError(os.str());
  }

  Eigen::VectorXd rhs(2 * N);
  rhs.head(N) = mp.moment_cos;
  rhs.tail(N) = mp.moment_sin;
  mp.multipliers = mp.gram.ldlt().solve(rhs);

  const double dt = opts.dt > 0 ? opts.dt : default_dt(*gen->grid(), cfg);
  const int nsamp = static_cast<int>(std::ceil(tau / dt - 1e-9)) + 1;
  ControlSignal u;
  u.dt = dt;
  u.samples.resize(nsamp);
  for (int n = 0; n < nsamp; ++n) {
    const double s = std::min(n * dt, tau);
    double val = 0.0;
    for (int k = 0; k < N; ++k) {
      const double th = mp.omega[k] * (tau - s);
      val += mp.multipliers[k] * std::cos(th) + mp.multipliers[N + k] * std::sin(th);
    }
    u.samples[n] = val;
  }
  res.u = std::move(u);
  res.moments = std::move(mp);
  return res;
}

ModalCoeffs modal_terminal_coeffs(const ControlSignal& u, const ModeSet& modes, double tau) {
  const int N = modes.count();
  ModalCoeffs c;
  c.a_p = Eigen::VectorXd::Zero(N);
  c.a_r = Eigen::VectorXd::Zero(N);
  if (u.empty() || u.dt <= 0) return c;
  const int nseg = static_cast<int>(u.samples.size()) - 1;
  for (int k = 0; k < N; ++k) {
    const Mode& m = modes.mode(k);
    const double w = m.omega;
    double Ic = 0.0, Is = 0.0;
    for (int n = 0; n < nseg; ++n) {
      const double t0 = n * u.dt;
      const double t1 = std::min((n + 1) * u.dt, tau);
      if (t1 <= t0) break;
      const double u0 = u.samples[n];
      const double u1 = u.samples[n + 1];
      // integrate (u0 + B (s - t0)) {cos,sin}(w (tau - s)) ds exactly
      const double B = (u1 - u0) / u.dt;
      const double th0 = w * (tau - t0), th1 = w * (tau - t1);
      const double s0 = std::sin(th0), s1 = std::sin(th1);
      const double c0 = std::cos(th0), c1 = std::cos(th1);
      // antiderivatives: d/ds[-sin(w(tau-s))/w] = cos(w(tau-s)),
      //                  d/ds[ cos(w(tau-s))/w] = sin(w(tau-s))
      const double I0c = (s0 - s1) / w;
      const double I0s = (c1 - c0) / w;
      // int (s-t0) cos(w(tau-s)) ds by parts with v = s - t0:
      //   = [ (s-t0) (-sin(w(tau-s))/w) ]_{t0}^{t1} + (1/w) int sin(w(tau-s)) ds
      const double dtseg = t1 - t0;
      const double I1c = dtseg * (-s1) / w + I0s / w;
      //   int (s-t0) sin(w(tau-s)) ds = [ (s-t0) cos(w(tau-s))/w ] - (1/w) int cos
      const double I1s = dtseg * c1 / w - I0c / w;
      Ic += u0 * I0c + B * I1c;
      Is += u0 * I0s + B * I1s;
    }
    const double bk = std::sqrt(2.0) * m.gamma * m.b / 2.0;
    c.a_p[k] = bk * Ic;
    c.a_r[k] = -bk * Is;
  }
  return c;
}

ReachReport verify_reach(const ControlSignal& u, const State& target, double tau,
                         std::shared_ptr<const DiscreteGenerator> gen, const ModeSet& modes) {
  const auto& cfg = gen->config();
  ReachReport rep;
  SimulateOptions opts;
  opts.dt = u.dt;
  Trajectory traj = simulate(State::zero(gen->grid()), u, tau, gen, opts);
  rep.reached = traj.final_state();
  rep.error_abs = norm(rep.reached - target, cfg);
  const double tn = norm(target, cfg);
  rep.error_rel = rep.error_abs / (tn + 1e-300);

  const ModalCoeffs ct = modes.decompose(target);
  const ModalCoeffs cr = modes.decompose(rep.reached);
  const ModalCoeffs cm = modal_terminal_coeffs(u, modes, tau);
  rep.per_mode_error.resize(modes.count());
  double span2 = 0.0;
  for (int k = 0; k < modes.count(); ++k) {
    rep.per_mode_error[k] = std::hypot(cr.a_p[k] - ct.a_p[k], cr.a_r[k] - ct.a_r[k]);
    span2 += rep.per_mode_error[k] * rep.per_mode_error[k];
  }
  rep.span_error_abs = std::sqrt(span2);
  rep.span_error_rel = rep.span_error_abs / (std::sqrt(ct.a_p.squaredNorm() + ct.a_r.squaredNorm()) + 1e-300);
  double m2 = 0.0;
  for (int k = 0; k < modes.count(); ++k)
    m2 += std::pow(cm.a_p[k] - ct.a_p[k], 2) + std::pow(cm.a_r[k] - ct.a_r[k], 2);
  rep.modal_error_abs = std::sqrt(m2);
  rep.modal_error_rel = rep.modal_error_abs / (ct.l2_norm() + 1e-300);
  return rep;
}

StabilizeResult stabilize(const State& z0, double T,
                          std::shared_ptr<const DiscreteGenerator> gen, StabilizeOptions opts) {
  const auto& cfg = gen->config();
  if (cfg.symmetric()) {
    const double an = asymmetry_norm(z0, cfg);
    if (an > 1e-8 * (norm(z0, cfg) + 1e-300))
      throw std::invalid_argument(
          "stabilize: asymmetric initial state on a symmetric configuration");
  }
  check_volume_constraint(z0);
  const double dt = opts.dt > 0 ? opts.dt : default_dt(*gen->grid(), cfg);
  const int steps = std::max(1, static_cast<int>(std::ceil(T / dt - 1e-9)));

  MidpointStepper stepper(gen, dt, /*closed_loop=*/true);
  Eigen::VectorXd z = gen->pack(z0);
  const int ie = gen->dim() - 1;

  StabilizeResult res;
  auto& traj = res.trajectory;
  const int stride = std::max(1, steps / 4096);
  auto energy_of = [&](const Eigen::VectorXd& v) { return v.dot(gen->mass() * v); };

  double prev_norm = std::sqrt(std::max(0.0, energy_of(z)));
  traj.times.push_back(0.0);
  traj.norms.push_back(prev_norm);
  traj.u.push_back(-0.5 * z[ie]);
  traj.energy.push_back(prev_norm * prev_norm);
  traj.work.push_back(0.0);
  traj.snapshot_steps.push_back(0);
  traj.snapshots.push_back(gen->unpack(z));

  for (int n = 1; n <= steps; ++n) {
    z = stepper.step_packed(z, 0.0);
    const double E = energy_of(z);
    const double nn = std::sqrt(std::max(0.0, E));
    if (nn > prev_norm * (1.0 + 1e-12)) res.monotone = false;
    prev_norm = nn;
    traj.times.push_back(n * dt);
    traj.norms.push_back(nn);
    traj.u.push_back(-0.5 * z[ie]);
    traj.energy.push_back(E);
    traj.work.push_back(0.0);
    if (n % stride == 0 || n == steps) {
      traj.snapshot_steps.push_back(n);
      traj.snapshots.push_back(gen->unpack(z));
    }
  }

  // least squares of log||z|| against log(1+t) over the tail of the horizon
  const double t_start = T * (1.0 - opts.fit_window_fraction);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (size_t i = 0; i < traj.times.size(); ++i) {
    if (traj.times[i] < t_start || traj.norms[i] <= 0) continue;
    const double x = std::log1p(traj.times[i]);
    const double y = std::log(traj.norms[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  if (cnt >= 2) {
    const double denom = cnt * sxx - sx * sx;
    if (denom != 0) res.fitted_exponent = -(cnt * sxy - sx * sy) / denom;
  }
  return res;
}

GramianReport gramian(double tau, const std::vector<Mode>& modes) {
  if (!(tau > 0)) throw std::invalid_argument("gramian: tau must be positive");
  const int N = static_cast<int>(modes.size());
  GramianReport rep;
  rep.matrix.resize(N, N);
  for (int j = 0; j < N; ++j) {
    for (int k = 0; k < N; ++k) {
      const double bj = modes[j].control_authority();
      const double bk = modes[k].control_authority();
      const double dw = modes[j].omega - modes[k].omega;
      std::complex<double> I;
      if (dw == 0.0) {
        I = tau;
      } else {
        const std::complex<double> iw(0.0, dw);
        I = (std::exp(iw * tau) - 1.0) / iw;
      }
      rep.matrix(j, k) = I * bj * bk;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rep.matrix);
  rep.min_eigenvalue = es.eigenvalues().minCoeff();
  rep.max_eigenvalue = es.eigenvalues().maxCoeff();
  return rep;
}

} // namespace floatctl
