#include "floatctl/cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>
#include <json.hpp>

#include "floatctl/control.hpp"
#include "floatctl/errors.hpp"
#include "floatctl/io.hpp"
#include "floatctl/nonlinear.hpp"
#include "floatctl/quadrature.hpp"

namespace floatctl {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  int cells_override = 0;
  double tol_root = 1e-12;
  double tol_volume = 1e-8;
};

LoadedConfig load_with_overrides(const CommonArgs& a) {
  LoadedConfig lc = load_config_file(a.config_path);
  if (a.cells_override > 0) lc.cells = a.cells_override;
  return lc;
}

std::string out_path(const CommonArgs& a, const std::string& name) {
  fs::create_directories(a.out_dir);
  return (fs::path(a.out_dir) / name).string();
}

void finish_manifest(const CommonArgs& a, RunManifest& man,
                     std::chrono::steady_clock::time_point t0) {
  man.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (const auto& f : man.outputs) {
    std::error_code ec;
    if (!fs::exists(f, ec) || fs::file_size(f, ec) == 0)
      throw NumericalError("manifest lists a missing or empty output: " + f);
  }
  const std::string path = out_path(a, "manifest.json");
  write_manifest(path, man);
}

int cmd_spectrum(const CommonArgs& a, int count, const std::string& branch_name) {
  const auto t0 = std::chrono::steady_clock::now();
  const LoadedConfig lc = load_with_overrides(a);
  const SymmetryClass branch =
      branch_name == "symmetric" ? SymmetryClass::symmetric : SymmetryClass::general;
  RootSearchOptions ropts;
  ropts.residual_rel_tol = a.tol_root;
  const SpectrumReport rep = compute_spectrum(lc.physical, count, branch, ropts);
  std::vector<double> residuals;
  residuals.reserve(rep.modes.size());
  for (const auto& m : rep.modes) {
    residuals.push_back(branch == SymmetryClass::symmetric
                            ? char_residual_symmetric(m.omega, lc.physical)
                            : char_residual_general(m.omega, lc.physical));
  }
  const std::string csv = out_path(a, "spectrum.csv");
  write_spectrum_csv(csv, rep, lc.physical, residuals);
  const std::string js = out_path(a, "spectrum.json");
  {
    std::ofstream o(js);
    o << spectrum_report_to_json(rep, lc.physical) << "\n";
  }
  if (!rep.gaps.empty)
    std::printf("spectrum: %zu roots, min gap %.6g (k=%d), min k*gap %.6g\n", rep.modes.size(),
                rep.gaps.min_gap, rep.gaps.min_gap_k, rep.gaps.min_k_gap);
  RunManifest man;
  man.config_hash = lc.hash;
  man.subcommand = "spectrum";
  man.parameters = {{"count", std::to_string(count)}, {"branch", branch_name}};
  man.outputs = {csv, js};
  finish_manifest(a, man, t0);
  return 0;
}

int cmd_modes(const CommonArgs& a, int count, const std::string& branch_name) {
  const auto t0 = std::chrono::steady_clock::now();
  const LoadedConfig lc = load_with_overrides(a);
  const SymmetryClass branch =
      branch_name == "symmetric" ? SymmetryClass::symmetric : SymmetryClass::general;
  const auto omegas = find_eigenvalues(lc.physical, count, branch);
  auto grid = make_grid(lc.physical, lc.cells);
  RunManifest man;
  man.config_hash = lc.hash;
  man.subcommand = "modes";
  man.parameters = {{"count", std::to_string(count)}, {"branch", branch_name}};
  for (size_t k = 0; k < omegas.size(); ++k) {
    const Mode m = assemble_mode(omegas[k], lc.physical, branch, static_cast<int>(k + 1));
    char name[64];
    std::snprintf(name, sizeof name, "mode_%03zu.csv", k + 1);
    const std::string path = out_path(a, name);
    std::ofstream out(path);
    out << "# floatctl mode v1\n";
    out << "# k = " << m.k_index << "\n";
    out << "# omega = " << format_double(m.omega) << "\n";
    out << "# K1 = " << format_double(m.K1) << "\n";
    out << "# K2 = " << format_double(m.K2) << "\n";
    out << "# gamma = " << format_double(m.gamma) << "\n";
    out << "# c = " << format_double(m.c) << "\n";
    out << "# a_im = " << format_double(m.a_im) << "\n";
    out << "# b = " << format_double(m.b) << "\n";
    out << "x,phi_im,psi\n";
    for (int j = 0; j < grid->zeta_size(); ++j) {
      const double x = grid->zeta_node(j);
      out << format_double(x) << "," << format_double(m.phi_im_at(x)) << ","
          << format_double(m.psi_at(x)) << "\n";
    }
    man.outputs.push_back(path);
  }
  finish_manifest(a, man, t0);
  return 0;
}

int cmd_simulate(const CommonArgs& a, const std::string& initial_path,
                 const std::string& control_path, double T, double dt, bool nonlinear,
                 bool pressure_snapshots, int snapshots) {
  const auto t0 = std::chrono::steady_clock::now();
  const LoadedConfig lc = load_with_overrides(a);
  auto grid = make_grid(lc.physical, lc.cells);

  State z0 = State::zero(grid);
  if (!initial_path.empty()) {
    z0 = read_state_csv(initial_path);
    if (!z0.grid->same_as(*grid)) grid = z0.grid;
  }
  check_volume_constraint(z0, a.tol_volume);

  ControlSignal u;
  if (!control_path.empty()) {
    u = read_control_csv(control_path);
  } else {
    u = ControlSignal::zero(dt > 0 ? dt : default_dt(*grid, lc.physical), 2);
  }

  RunManifest man;
  man.config_hash = lc.hash;
  man.subcommand = nonlinear ? "simulate --nonlinear" : "simulate";
  man.parameters = {{"T", format_double(T)}, {"dt", format_double(dt)}};
  json ledger;

  if (!nonlinear) {
    auto gen = std::make_shared<DiscreteGenerator>(lc.physical, grid);
    SimulateOptions opts;
    opts.dt = dt;
    if (snapshots > 0) opts.snapshot_stride = std::max(1, static_cast<int>(std::ceil(T / ((dt > 0 ? dt : default_dt(*grid, lc.physical)) * snapshots))));
    const Trajectory traj = simulate(z0, u, T, gen, opts);
    for (size_t i = 0; i < traj.snapshots.size(); ++i) {
      char name[64];
      std::snprintf(name, sizeof name, "snapshot_%06d.csv", traj.snapshot_steps[i]);
      const std::string path = out_path(a, name);
      write_state_csv(path, traj.snapshots[i]);
      man.outputs.push_back(path);
    }
    const std::string energy_csv = out_path(a, "energy.csv");
    {
      std::ofstream out(energy_csv);
      out << "# floatctl energy ledger v1\n";
      out << "t,u,energy,work,norm\n";
      for (size_t n = 0; n < traj.times.size(); ++n)
        out << format_double(traj.times[n]) << "," << format_double(traj.u[n]) << ","
            << format_double(traj.energy[n]) << "," << format_double(traj.work[n]) << ","
            << format_double(traj.norms[n]) << "\n";
    }
    man.outputs.push_back(energy_csv);
    ledger["max_energy_work_mismatch"] = traj.max_energy_work_mismatch;
    ledger["max_volume_residual"] = traj.max_volume_residual;
    std::printf("simulate: %zu steps, max |E - E0 - W| = %.3e\n", traj.times.size() - 1,
                traj.max_energy_work_mismatch);
  } else {
    NonlinearState s0 = nonlinear_from_linear(z0, lc.physical);
    NonlinearRunOptions opts;
    opts.dt = dt;
    const NonlinearTrajectory traj = simulate_nonlinear(s0, u, T, lc.physical, opts);
    for (size_t i = 0; i < traj.snapshots.size(); ++i) {
      char name[64];
      std::snprintf(name, sizeof name, "snapshot_%06d.csv", traj.snapshot_steps[i]);
      const std::string path = out_path(a, name);
      write_state_csv(path, linear_from_nonlinear(traj.snapshots[i], lc.physical));
      man.outputs.push_back(path);
      if (pressure_snapshots) {
        const auto& s = traj.snapshots[i];
        const double un = u(s.time);
        const PressureProfile prof =
            reconstruct_interior_pressure(s, scalar_rates(s, un, lc.physical).deta, un,
                                          lc.physical);
        std::snprintf(name, sizeof name, "pressure_%06d.csv", traj.snapshot_steps[i]);
        const std::string ppath = out_path(a, name);
        std::ofstream out(ppath);
        out << "# floatctl interior pressure v1\n";
        out << "# t = " << format_double(s.time) << "\n";
        out << "# integral_P = " << format_double(prof.integral_P) << "\n";
        out << "# newton_residual = " << format_double(prof.newton_residual) << "\n";
        out << "x,Pi,P\n";
        for (int j = 0; j < prof.x.size(); ++j)
          out << format_double(prof.x[j]) << "," << format_double(prof.Pi[j]) << ","
              << format_double(prof.P[j]) << "\n";
        man.outputs.push_back(ppath);
      }
    }
    const std::string vol_csv = out_path(a, "volume.csv");
    {
      std::ofstream out(vol_csv);
      out << "# floatctl volume ledger v1\n";
      out << "t,volume,energy\n";
      for (size_t n = 0; n < traj.times.size(); ++n)
        out << format_double(traj.times[n]) << "," << format_double(traj.volume[n]) << ","
            << format_double(traj.energy[n]) << "\n";
    }
    man.outputs.push_back(vol_csv);
    ledger["max_volume_drift_rel"] = traj.max_volume_drift_rel;
    std::printf("simulate --nonlinear: %zu steps, max volume drift %.3e\n",
                traj.times.size() - 1, traj.max_volume_drift_rel);
  }

  const std::string ledger_path = out_path(a, "ledger.json");
  {
    std::ofstream o(ledger_path);
    o << ledger.dump(2) << "\n";
  }
  man.outputs.push_back(ledger_path);
  finish_manifest(a, man, t0);
  return 0;
}

int cmd_steer(const CommonArgs& a, const std::string& target_path, double tau, int n_modes,
              double dt) {
  const auto t0 = std::chrono::steady_clock::now();
  const LoadedConfig lc = load_with_overrides(a);
  auto grid = make_grid(lc.physical, lc.cells);
  State target = read_state_csv(target_path);
  if (!target.grid->same_as(*grid)) grid = target.grid;
  auto gen = std::make_shared<DiscreteGenerator>(lc.physical, grid);

  SteerOptions sopts;
  sopts.dt = dt;
  const SteerResult res = steer(target, tau, n_modes, gen, sopts);

  const std::string control_csv = out_path(a, "control.csv");
  write_control_csv(control_csv, res.u);

  const auto omegas = find_eigenvalues(lc.physical, n_modes, SymmetryClass::symmetric);
  std::vector<Mode> modes;
  for (size_t k = 0; k < omegas.size(); ++k)
    modes.push_back(
        assemble_mode(omegas[k], lc.physical, SymmetryClass::symmetric, static_cast<int>(k + 1)));
  ModeSet set(modes, grid, lc.physical);
  const ReachReport reach = verify_reach(res.u, project_symmetric(target), tau, gen, set);

  json j;
  j["tau"] = tau;
  j["tau0"] = lc.physical.tau0;
  j["n_modes"] = n_modes;
  j["gram_condition"] = res.gram_condition;
  j["modal_defect"] = res.modal_defect;
  j["antisymmetric_defect"] = res.antisymmetric_defect;
  j["terminal_error_abs"] = reach.error_abs;
  j["terminal_error_rel"] = reach.error_rel;
  j["span_error_rel"] = reach.span_error_rel;
  j["modal_error_rel"] = reach.modal_error_rel;
  j["w_quotient"] = res.w_quotient;
  if (!res.warning.empty()) j["warning"] = res.warning;
  const std::string verify_json = out_path(a, "verification.json");
  {
    std::ofstream o(verify_json);
    o << j.dump(2) << "\n";
  }
  std::printf("steer: grid error %.3e rel, modal error %.3e rel, gram cond %.3e\n",
              reach.error_rel, reach.modal_error_rel, res.gram_condition);

  RunManifest man;
  man.config_hash = lc.hash;
  man.subcommand = "steer";
  man.parameters = {{"tau", format_double(tau)}, {"modes", std::to_string(n_modes)}};
  man.outputs = {control_csv, verify_json};
  finish_manifest(a, man, t0);
  return 0;
}

int cmd_stabilize(const CommonArgs& a, const std::string& initial_path, double T, double dt) {
  const auto t0 = std::chrono::steady_clock::now();
  const LoadedConfig lc = load_with_overrides(a);
  auto grid = make_grid(lc.physical, lc.cells);
  auto gen = std::make_shared<DiscreteGenerator>(lc.physical, grid);

  State z0 = State::zero(grid);
  if (!initial_path.empty()) {
    z0 = read_state_csv(initial_path);
    if (!z0.grid->same_as(*grid)) {
      grid = z0.grid;
      gen = std::make_shared<DiscreteGenerator>(lc.physical, grid);
    }
  } else {
    // default: the first two symmetric modes (a smooth element of D(A))
    const auto omegas = find_eigenvalues(lc.physical, 2, SymmetryClass::symmetric);
    for (size_t k = 0; k < omegas.size(); ++k) {
      const Mode m =
          assemble_mode(omegas[k], lc.physical, SymmetryClass::symmetric, static_cast<int>(k + 1));
      const ModePair pr = sample_mode_pair(m, grid);
      z0 += pr.p;
    }
  }
  if (T <= 0) T = 50.0 * lc.physical.tau0;

  StabilizeOptions sopts;
  sopts.dt = dt;
  const StabilizeResult res = stabilize(z0, T, gen, sopts);

  const std::string decay_csv = out_path(a, "decay.csv");
  {
    std::ofstream out(decay_csv);
    out << "# floatctl stabilize decay v1\n";
    out << "t,norm,u\n";
    for (size_t n = 0; n < res.trajectory.times.size(); ++n)
      out << format_double(res.trajectory.times[n]) << ","
          << format_double(res.trajectory.norms[n]) << "," << format_double(res.trajectory.u[n])
          << "\n";
  }
  json j;
  j["fitted_exponent"] = res.fitted_exponent;
  j["monotone"] = res.monotone;
  j["T"] = T;
  const std::string exp_json = out_path(a, "exponent.json");
  {
    std::ofstream o(exp_json);
    o << j.dump(2) << "\n";
  }
  std::printf("stabilize: monotone=%s fitted p=%.4f over T=%.4g\n",
              res.monotone ? "yes" : "no", res.fitted_exponent, T);

  RunManifest man;
  man.config_hash = lc.hash;
  man.subcommand = "stabilize";
  man.parameters = {{"T", format_double(T)}};
  man.outputs = {decay_csv, exp_json};
  finish_manifest(a, man, t0);
  return 0;
}

int cmd_check(const CommonArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  const LoadedConfig lc = load_with_overrides(a);
  const PhysicalConfig& cfg = lc.physical;
  auto grid = make_grid(cfg, std::min(lc.cells, 100));
  auto gen = std::make_shared<DiscreteGenerator>(cfg, grid);
  std::mt19937_64 rng(0xC0FFEE);
  std::normal_distribution<double> dist;

  auto random_state = [&]() {
    State z = State::zero(grid);
    for (int i = 0; i < z.zeta.size(); ++i) z.zeta[i] = dist(rng);
    for (int i = 0; i < z.q.size(); ++i) z.q[i] = dist(rng);
    z.qi_avg = dist(rng);
    z.eta = dist(rng);
    z.delta = 0.0;
    z.delta = -volume_residual(z) / (2.0 * cfg.l);
    return z;
  };

  int failures = 0;
  auto report = [&](const std::string& name, bool ok, double metric) {
    std::printf("%-42s %s   (%.3e)\n", name.c_str(), ok ? "PASS" : "FAIL", metric);
    if (!ok) ++failures;
  };

  {
    const double archimedes = std::abs(
        cfg.m - cfg.rho * trapezoid_refined([&](double x) { return cfg.h0 - cfg.h_eq(x); },
                                            -cfg.l, cfg.l)
                              .value);
    report("archimedes mass identity", archimedes <= 1e-8 * cfg.m, archimedes);
  }
  {
    bool ok = true;
    double worst = 0.0;
    for (int t = 0; t < 16; ++t) {
      const State z = random_state();
      const double n2 = inner_product(z, z, cfg);
      ok = ok && n2 > 0;
      const State az = gen->apply(z);
      const double skew = std::abs(inner_product(az, z, cfg));
      const double scale = norm(az, cfg) * norm(z, cfg) + 1e-300;
      worst = std::max(worst, skew / scale);
    }
    report("inner product positive definite", ok, 0.0);
    report("generator skew-symmetry", worst <= 1e-12, worst);
  }
  {
    const State z = random_state();
    MidpointStepper stepper(gen, default_dt(*grid, cfg));
    State s = z;
    double worst_vol = 0.0, worst_norm = 0.0;
    const double n0 = norm(s, cfg);
    for (int n = 0; n < 50; ++n) {
      s = stepper.step(s);
      worst_vol = std::max(worst_vol, std::abs(volume_residual(s)) / (volume_scale(s)));
      worst_norm = std::max(worst_norm, std::abs(norm(s, cfg) - n0) / n0);
    }
    report("midpoint norm conservation", worst_norm <= 1e-11, worst_norm);
    report("volume constraint preserved", worst_vol <= a.tol_volume, worst_vol);
  }
  {
    bool ok = true;
    double worst = 0.0;
    try {
      const auto omegas = find_eigenvalues(cfg, 5, cfg.symmetric() ? SymmetryClass::symmetric
                                                                   : SymmetryClass::general);
      for (size_t k = 0; k < omegas.size(); ++k) {
        double scale = 0.0;
        const double r = cfg.symmetric() ? char_residual_symmetric(omegas[k], cfg, &scale)
                                         : char_residual_general(omegas[k], cfg, &scale);
        worst = std::max(worst, std::abs(r) / scale);
      }
    } catch (const std::exception&) {
      ok = false;
    }
    report("characteristic roots", ok && worst <= a.tol_root * 10, worst);
  }
  std::printf("%s\n", failures == 0 ? "check: all invariant suites pass"
                                    : "check: FAILURES detected");
  RunManifest man;
  man.config_hash = lc.hash;
  man.subcommand = "check";
  finish_manifest(a, man, t0);
  return failures == 0 ? 0 : 3;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"floatctl: shallow-water floating-body control toolkit"};
  app.require_subcommand(1);

  CommonArgs common;
  app.add_option("--config", common.config_path, "configuration file")->required();
  app.add_option("--out", common.out_dir, "output directory");
  app.add_option("--cells", common.cells_override, "cells per exterior side override");
  app.add_option("--tol-root", common.tol_root, "characteristic root residual tolerance");
  app.add_option("--tol-volume", common.tol_volume, "volume constraint tolerance");

  int count = 30;
  std::string branch = "symmetric";
  auto* sp = app.add_subcommand("spectrum", "characteristic roots, gaps, resonance diagnostics");
  sp->add_option("--count", count, "number of roots");
  sp->add_option("--branch", branch, "general|symmetric")
      ->check(CLI::IsMember({"general", "symmetric"}));

  int mcount = 8;
  std::string mbranch = "symmetric";
  auto* mo = app.add_subcommand("modes", "assemble and write eigenvector samples");
  mo->add_option("--count", mcount, "number of modes");
  mo->add_option("--branch", mbranch, "general|symmetric")
      ->check(CLI::IsMember({"general", "symmetric"}));

  std::string initial_path, control_path;
  double T = 10.0, dt = 0.0;
  bool nonlinear = false, pressure = false;
  int snapshots = 0;
  auto* sim = app.add_subcommand("simulate", "integrate the controlled system");
  sim->add_option("--initial", initial_path, "initial state CSV (default: rest)");
  sim->add_option("--control", control_path, "control CSV (default: zero)");
  sim->add_option("--T", T, "horizon (s)");
  sim->add_option("--dt", dt, "time step (default 0.2 h / sqrt(g h0))");
  sim->add_flag("--nonlinear", nonlinear, "use the nonlinear exterior solver");
  sim->add_flag("--pressure", pressure, "write interior pressure snapshots (nonlinear)");
  sim->add_option("--snapshots", snapshots, "approximate number of state snapshots");

  std::string target_path;
  double tau = 0.0;
  int n_modes = 8;
  double steer_dt = 0.0;
  auto* st = app.add_subcommand("steer", "open-loop steering to a symmetric target");
  st->add_option("--target", target_path, "target state CSV")->required();
  st->add_option("--tau", tau, "horizon (s), must exceed tau0")->required();
  st->add_option("--modes", n_modes, "moment-problem truncation");
  st->add_option("--dt", steer_dt, "control sample step");

  std::string stab_initial;
  double stab_T = 0.0, stab_dt = 0.0;
  auto* sb = app.add_subcommand("stabilize", "closed-loop feedback run with decay fit");
  sb->add_option("--initial", stab_initial, "initial state CSV (default: first two modes)");
  sb->add_option("--T", stab_T, "horizon (default 50 tau0)");
  sb->add_option("--dt", stab_dt, "time step");

  app.add_subcommand("check", "run the invariant suite on a configuration");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sp->parsed()) return cmd_spectrum(common, count, branch);
    if (mo->parsed()) return cmd_modes(common, mcount, mbranch);
    if (sim->parsed())
      return cmd_simulate(common, initial_path, control_path, T, dt, nonlinear, pressure,
                          snapshots);
    if (st->parsed()) return cmd_steer(common, target_path, tau, n_modes, steer_dt);
    if (sb->parsed()) return cmd_stabilize(common, stab_initial, stab_T, stab_dt);
    return cmd_check(common);
  } catch (const ConfigError& e) {
    nlohmann::json j{{"error", {{"type", "config"}, {"message", e.what()}}}};
    std::cerr << j.dump() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    nlohmann::json j{{"error", {{"type", "config"}, {"message", e.what()}}}};
    std::cerr << j.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    nlohmann::json j{{"error", {{"type", "numerical"}, {"message", e.what()}}}};
    std::cerr << j.dump() << "\n";
    return 3;
  }
}

} // namespace floatctl
