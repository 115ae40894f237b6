#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "floatctl/control.hpp"
#include "floatctl/errors.hpp"
#include "floatctl/io.hpp"
#include "floatctl/nonlinear.hpp"

namespace py = pybind11;
using namespace floatctl;

namespace {

std::vector<double> to_vec(const Eigen::VectorXd& v) {
  return {v.data(), v.data() + v.size()};
}

Eigen::VectorXd from_vec(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<long>(v.size()));
}

struct PySession {
  PhysicalConfig cfg;
  GridPtr grid;
  std::shared_ptr<DiscreteGenerator> gen;
};

} // namespace

PYBIND11_MODULE(_floatctl, m) {
  m.doc() = "shallow-water floating-body control toolkit";
  m.attr("__version__") = kToolVersion;

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

  py::class_<PhysicalConfig>(m, "PhysicalConfig")
      .def_readonly("g", &PhysicalConfig::g)
      .def_readonly("rho", &PhysicalConfig::rho)
      .def_readonly("h0", &PhysicalConfig::h0)
      .def_readonly("l", &PhysicalConfig::l)
      .def_readonly("L", &PhysicalConfig::L)
      .def_readonly("Lp", &PhysicalConfig::Lp)
      .def_readonly("m", &PhysicalConfig::m)
      .def_readonly("alpha_bar", &PhysicalConfig::alpha_bar)
      .def_readonly("M_bar", &PhysicalConfig::M_bar)
      .def_readonly("kappa", &PhysicalConfig::kappa)
      .def_readonly("tau0", &PhysicalConfig::tau0)
      .def("wave_speed", &PhysicalConfig::wave_speed);

  m.def(
      "build_config",
      [](double g, double rho, double h0, double l, double L, double Lp, double h_eq_flat) {
        return build_config(g, rho, h0, l, L, Lp, HeqProfile::flat(h_eq_flat));
      },
      py::arg("g"), py::arg("rho"), py::arg("h0"), py::arg("l"), py::arg("L"), py::arg("Lp"),
      py::arg("h_eq_flat"), "Build a configuration with a flat object bottom.");
  m.def(
      "build_config_sampled",
      [](double g, double rho, double h0, double l, double L, double Lp,
         std::vector<double> xs, std::vector<double> vs) {
        return build_config(g, rho, h0, l, L, Lp, HeqProfile::sampled(std::move(xs), std::move(vs)));
      },
      "Build a configuration with a sampled even bottom profile.");

  py::class_<Mode>(m, "Mode")
      .def_readonly("omega", &Mode::omega)
      .def_readonly("k_index", &Mode::k_index)
      .def_readonly("K1", &Mode::K1)
      .def_readonly("K2", &Mode::K2)
      .def_readonly("gamma", &Mode::gamma)
      .def_readonly("c", &Mode::c)
      .def_readonly("a_im", &Mode::a_im)
      .def_readonly("b", &Mode::b)
      .def("psi_at", &Mode::psi_at)
      .def("phi_im_at", &Mode::phi_im_at)
      .def("control_authority", &Mode::control_authority);

  m.def(
      "find_eigenvalues",
      [](const PhysicalConfig& cfg, int count, const std::string& branch) {
        return find_eigenvalues(cfg, count,
                                branch == "general" ? SymmetryClass::general
                                                    : SymmetryClass::symmetric);
      },
      py::arg("cfg"), py::arg("count"), py::arg("branch") = "symmetric");
  m.def(
      "assemble_mode",
      [](double omega, const PhysicalConfig& cfg, const std::string& branch, int k) {
        return assemble_mode(omega, cfg,
                             branch == "general" ? SymmetryClass::general
                                                 : SymmetryClass::symmetric,
                             k);
      },
      py::arg("omega"), py::arg("cfg"), py::arg("branch") = "symmetric", py::arg("k_index") = 0);
  m.def("char_residual_general",
        [](double w, const PhysicalConfig& cfg) { return char_residual_general(w, cfg); });
  m.def("char_residual_symmetric",
        [](double w, const PhysicalConfig& cfg) { return char_residual_symmetric(w, cfg); });
  m.def("verify_eigenpair", &verify_eigenpair);

  m.def("detect_resonance", [](const PhysicalConfig& cfg) {
    const ResonanceReport r = detect_resonance(cfg);
    py::dict d;
    d["kappa"] = r.kappa;
    d["omega_candidate"] = r.omega_candidate;
    d["double_candidate"] = r.double_candidate;
    d["band_low"] = r.band_low;
    d["band_high"] = r.band_high;
    d["simplicity"] = r.simplicity == ResonanceReport::Simplicity::guaranteed
                          ? "guaranteed"
                          : (r.simplicity == ResonanceReport::Simplicity::excluded_candidate
                                 ? "excluded_candidate"
                                 : "undetermined");
    return d;
  });

  py::class_<State>(m, "State")
      .def_property_readonly("zeta", [](const State& z) { return to_vec(z.zeta); })
      .def_property_readonly("q", [](const State& z) { return to_vec(z.q); })
      .def_readwrite("qi_avg", &State::qi_avg)
      .def_readwrite("delta", &State::delta)
      .def_readwrite("eta", &State::eta);

  py::class_<PySession>(m, "Session")
      .def(py::init([](const PhysicalConfig& cfg, int cells) {
             PySession s{cfg, make_grid(cfg, cells), nullptr};
             s.gen = std::make_shared<DiscreteGenerator>(cfg, s.grid);
             return s;
           }),
           py::arg("cfg"), py::arg("cells") = 200)
      .def("zero_state", [](const PySession& s) { return State::zero(s.grid); })
      .def("make_state",
           [](const PySession& s, std::vector<double> zeta, std::vector<double> q, double qi,
              double delta, double eta) {
             State z = State::zero(s.grid);
             if (static_cast<long>(zeta.size()) != z.zeta.size() ||
                 static_cast<long>(q.size()) != z.q.size())
               throw ConfigError("make_state: field sizes do not match the grid");
             z.zeta = from_vec(zeta);
             z.q = from_vec(q);
             z.qi_avg = qi;
             z.delta = delta;
             z.eta = eta;
             return z;
           })
      .def("mode_state",
           [](const PySession& s, const Mode& m, bool p_part) {
             const ModePair pr = sample_mode_pair(m, s.grid);
             return p_part ? pr.p : pr.r;
           },
           py::arg("mode"), py::arg("p_part") = true)
      .def("inner_product",
           [](const PySession& s, const State& a, const State& b) {
             return inner_product(a, b, s.cfg);
           })
      .def("norm", [](const PySession& s, const State& z) { return norm(z, s.cfg); })
      .def("total_energy",
           [](const PySession& s, const State& z) {
             const EnergyBreakdown e = total_energy(z, s.cfg);
             return py::make_tuple(e.total, e.variable, e.offset);
           })
      .def("project_symmetric", [](const PySession&, const State& z) { return project_symmetric(z); })
      .def("apply_generator", [](const PySession& s, const State& z) { return s.gen->apply(z); })
      .def("b_star", [](const PySession&, const State& z) { return b_star(z); })
      .def(
          "simulate",
          [](PySession& s, const State& z0, std::vector<double> u_samples, double u_dt, double T,
             double dt) {
            ControlSignal u;
            u.dt = u_dt;
            u.samples = std::move(u_samples);
            SimulateOptions opts;
            opts.dt = dt;
            const Trajectory traj = simulate(z0, u, T, s.gen, opts);
            py::dict d;
            d["times"] = traj.times;
            d["energy"] = traj.energy;
            d["work"] = traj.work;
            d["norms"] = traj.norms;
            d["final_state"] = traj.final_state();
            d["max_energy_work_mismatch"] = traj.max_energy_work_mismatch;
            return d;
          },
          py::arg("z0"), py::arg("u_samples"), py::arg("u_dt"), py::arg("T"), py::arg("dt") = 0.0)
      .def(
          "steer",
          [](PySession& s, const State& target, double tau, int n_modes) {
            const SteerResult res = steer(target, tau, n_modes, s.gen);
            py::dict d;
            d["u_samples"] = res.u.samples;
            d["u_dt"] = res.u.dt;
            d["gram_condition"] = res.gram_condition;
            d["modal_defect"] = res.modal_defect;
            d["antisymmetric_defect"] = res.antisymmetric_defect;
            return d;
          },
          py::arg("target"), py::arg("tau"), py::arg("n_modes") = 8)
      .def(
          "stabilize",
          [](PySession& s, const State& z0, double T) {
            const StabilizeResult res = stabilize(z0, T, s.gen);
            py::dict d;
            d["times"] = res.trajectory.times;
            d["norms"] = res.trajectory.norms;
            d["monotone"] = res.monotone;
            d["fitted_exponent"] = res.fitted_exponent;
            return d;
          },
          py::arg("z0"), py::arg("T"))
      .def(
          "simulate_nonlinear",
          [](PySession& s, const State& z0, double T, double dt) {
            const NonlinearState s0 = nonlinear_from_linear(z0, s.cfg);
            NonlinearRunOptions opts;
            opts.dt = dt;
            const NonlinearTrajectory traj = simulate_nonlinear(s0, ControlSignal{}, T, s.cfg, opts);
            py::dict d;
            d["times"] = traj.times;
            d["volume"] = traj.volume;
            d["energy"] = traj.energy;
            d["max_volume_drift_rel"] = traj.max_volume_drift_rel;
            d["final_state"] = linear_from_nonlinear(traj.snapshots.back(), s.cfg);
            return d;
          },
          py::arg("z0"), py::arg("T"), py::arg("dt") = 0.0);

  m.def("coefficients", [](double delta, const PhysicalConfig& cfg) {
    const CoefficientSet c = coefficients(delta, cfg);
    return py::make_tuple(c.alpha, c.alpha_prime, c.beta, c.M);
  });
  m.def(
      "rest_pressure",
      [](const PhysicalConfig& cfg, int cells) {
        auto grid = make_grid(cfg, std::max(8, cells));
        const NonlinearState rest = NonlinearState::rest(grid, cfg);
        const PressureProfile prof = reconstruct_interior_pressure(rest, 0.0, 0.0, cfg);
        return py::make_tuple(to_vec(prof.x), to_vec(prof.P), prof.integral_P,
                              prof.newton_residual);
      },
      py::arg("cfg"), py::arg("cells") = 64,
      "Interior pressure profile of the rest state (Archimedes closure).");
}
