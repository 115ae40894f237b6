#include <doctest.h>

#include <cmath>
#include <random>

#include "floatctl/errors.hpp"
#include "test_helpers.hpp"

using namespace floatctl;
using namespace floatctl::testing;

TEST_CASE("inner product basics on CFG0") {
  const PhysicalConfig cfg = cfg0();
  auto grid = make_grid(cfg, 48);
  std::mt19937_64 rng(1);
  const State z = random_state(grid, cfg, rng);
  const State zero = State::zero(grid);

  CHECK(inner_product(z, zero, cfg) == 0.0);

  State eta_only = State::zero(grid);
  eta_only.eta = 1.0;
  CHECK(inner_product(eta_only, eta_only, cfg) == doctest::Approx(cfg.M_bar / 2).epsilon(1e-14));
  CHECK(inner_product(eta_only, eta_only, cfg) == doctest::Approx(1333.333333).epsilon(1e-8));

  // symmetry and bilinearity
  const State w = random_state(grid, cfg, rng);
  CHECK(inner_product(z, w, cfg) == doctest::Approx(inner_product(w, z, cfg)).epsilon(1e-14));
  CHECK(inner_product(z + w, w, cfg) ==
        doctest::Approx(inner_product(z, w, cfg) + inner_product(w, w, cfg)).epsilon(1e-12));
}

TEST_CASE("inner product is positive definite on grid states") {
  const PhysicalConfig cfg = cfg0();
  auto grid = make_grid(cfg, 32);
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    const State z = random_state(grid, cfg, rng);
    CHECK(inner_product(z, z, cfg) > 0.0);
  }
  CHECK(inner_product(State::zero(grid), State::zero(grid), cfg) == 0.0);
}

TEST_CASE("grid mismatch is rejected") {
  const PhysicalConfig cfg = cfg0();
  auto g1 = make_grid(cfg, 32);
  auto g2 = make_grid(cfg, 48);
  CHECK_THROWS_AS(inner_product(State::zero(g1), State::zero(g2), cfg), std::invalid_argument);
}

TEST_CASE("total energy: offset, variable part, homogeneity") {
  const PhysicalConfig cfg = cfg0();
  auto grid = make_grid(cfg, 48);
  const EnergyBreakdown at_rest = total_energy(State::zero(grid), cfg);
  // (rho g/2) * int_{-1}^{1} (1-2)^2 dx = 9810
  CHECK(at_rest.variable == 0.0);
  CHECK(at_rest.offset == doctest::Approx(9810.0).epsilon(1e-10));
  CHECK(at_rest.total == doctest::Approx(9810.0).epsilon(1e-10));

  std::mt19937_64 rng(3);
  const State z = random_state(grid, cfg, rng);
  const EnergyBreakdown e = total_energy(z, cfg);
  CHECK(e.variable == doctest::Approx(inner_product(z, z, cfg)).epsilon(1e-13));
  const EnergyBreakdown e2 = total_energy(2.0 * z, cfg);
  CHECK(e2.variable == doctest::Approx(4.0 * e.variable).epsilon(1e-12));
}

TEST_CASE("volume constraint helper") {
  const PhysicalConfig cfg = cfg0();
  auto grid = make_grid(cfg, 48);
  std::mt19937_64 rng(9);
  const State z = random_state(grid, cfg, rng);
  CHECK_NOTHROW(check_volume_constraint(z));
  State bad = z;
  bad.delta += 1.0;
  CHECK_THROWS_AS(check_volume_constraint(bad), NumericalError);
}

TEST_CASE("project_symmetric: idempotence, complement, orthogonality") {
  const PhysicalConfig cfg = cfg0();
  auto grid = make_grid(cfg, 40);
  std::mt19937_64 rng(11);

  // purely antisymmetric data: odd zeta, even q, nonzero <q_i>
  State anti = State::zero(grid);
  for (int j = 0; j < anti.zeta.size(); ++j) {
    const double x = grid->zeta_node(j);
    anti.zeta[j] = std::sin(0.5 * x);
  }
  for (int i = 0; i < anti.q.size(); ++i) anti.q[i] = std::cos(0.3 * grid->q_node(i));
  anti.qi_avg = 5.0;
  anti.delta = 0.25;
  anti.eta = -0.5;
  const State p = project_symmetric(anti);
  CHECK(p.zeta.cwiseAbs().maxCoeff() < 1e-14);
  CHECK(p.q.cwiseAbs().maxCoeff() < 1e-14);
  CHECK(p.qi_avg == 0.0);
  CHECK(p.delta == doctest::Approx(0.25));
  CHECK(p.eta == doctest::Approx(-0.5));

  for (int t = 0; t < 8; ++t) {
    const State z = random_state(grid, cfg, rng);
    const State pz = project_symmetric(z);
    const State ppz = project_symmetric(pz);
    CHECK(norm(ppz - pz, cfg) < 1e-13 * (norm(z, cfg) + 1));
    // orthogonality <Pz, z - Pz> = 0 and norm non-increase
    CHECK(std::abs(inner_product(pz, z - pz, cfg)) < 1e-10 * inner_product(z, z, cfg));
    CHECK(norm(pz, cfg) <= norm(z, cfg) * (1 + 1e-13));
  }
}

TEST_CASE("project_symmetric refuses asymmetric geometry") {
  const PhysicalConfig cfg = cfg_asym();
  auto grid = make_grid(cfg, 32);
  CHECK_THROWS_AS(project_symmetric(State::zero(grid)), std::invalid_argument);
}

TEST_CASE("q representative carries the transmission values") {
  const PhysicalConfig cfg = cfg0();
  auto grid = make_grid(cfg, 32);
  State z = State::zero(grid);
  z.qi_avg = 2.0;
  z.eta = 0.5;
  const Eigen::VectorXd ql = q_full_component(z, -1);
  const Eigen::VectorXd qr = q_full_component(z, +1);
  CHECK(ql[0] == 0.0);                                        // wall -L
  CHECK(ql[ql.size() - 1] == doctest::Approx(2.0 + cfg.l * 0.5)); // q(-l) = c + l eta
  CHECK(qr[0] == doctest::Approx(2.0 - cfg.l * 0.5));             // q(l) = c - l eta
  CHECK(qr[qr.size() - 1] == 0.0);                            // wall L'
}
