#include <doctest.h>

#include <cmath>

#include "floatctl/errors.hpp"
#include "floatctl/quadrature.hpp"
#include "test_helpers.hpp"

using namespace floatctl;
using namespace floatctl::testing;

TEST_CASE("CFG0 derived constants") {
  const PhysicalConfig cfg = cfg0();
  // flat gap of 1 m under a 2 m column, 2 m wide: closed forms
  CHECK(cfg.m == doctest::Approx(2000.0).epsilon(1e-10));
  CHECK(cfg.alpha_bar == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(cfg.M_bar == doctest::Approx(2000.0 + 2000.0 / 3.0).epsilon(1e-10));
  CHECK(cfg.kappa == doctest::Approx(2000.0 / 3.0).epsilon(1e-9));
  CHECK(cfg.tau0 == doctest::Approx(18.0 / std::sqrt(19.62)).epsilon(1e-12));
  CHECK(cfg.tau0 == doctest::Approx(4.0637).epsilon(1e-4));
}

TEST_CASE("geometry violations are rejected") {
  CHECK_THROWS_AS(build_config(9.81, 1000, 2, 10, 10, 10, HeqProfile::flat(1)), ConfigError);
  CHECK_THROWS_AS(build_config(9.81, 1000, 2, 1, 10, 0.5, HeqProfile::flat(1)), ConfigError);
  CHECK_THROWS_AS(build_config(9.81, 1000, -2, 1, 10, 10, HeqProfile::flat(1)), ConfigError);
  CHECK_THROWS_AS(build_config(9.81, -1, 2, 1, 10, 10, HeqProfile::flat(1)), ConfigError);
}

TEST_CASE("h_eq equal to h0 anywhere is rejected (zero submerged depth)") {
  CHECK_THROWS_AS(build_config(9.81, 1000, 2, 1, 10, 10, HeqProfile::flat(2.0)), ConfigError);
  CHECK_THROWS_AS(build_config(9.81, 1000, 2, 1, 10, 10, HeqProfile::flat(0.0)), ConfigError);
  // sampled profile that touches h0 near the edge
  std::vector<double> xs{-1, -0.5, 0, 0.5, 1}, vs{2.0, 1.0, 0.8, 1.0, 2.0};
  CHECK_THROWS_AS(build_config(9.81, 1000, 2, 1, 10, 10, HeqProfile::sampled(xs, vs)),
                  ConfigError);
}

TEST_CASE("uneven h_eq profiles are rejected, mildly asymmetric samples symmetrized") {
  std::vector<double> xs{-1, 0, 1};
  CHECK_THROWS_AS(HeqProfile::sampled(xs, {0.5, 0.9, 1.2}), ConfigError);
  const HeqProfile p = HeqProfile::sampled(xs, {0.8, 1.0, 0.8 + 1e-12});
  CHECK(p(-0.7) == doctest::Approx(p(0.7)).epsilon(1e-12));
}

TEST_CASE("sampled profile constants agree with the flat closed form") {
  // flat 1.0 expressed as a dense sample set
  std::vector<double> xs, vs;
  for (int i = 0; i <= 100; ++i) {
    xs.push_back(-1.0 + 0.02 * i);
    vs.push_back(1.0);
  }
  const PhysicalConfig cfg = build_config(9.81, 1000, 2, 1, 10, 10, HeqProfile::sampled(xs, vs));
  CHECK(cfg.m == doctest::Approx(2000.0).epsilon(1e-9));
  CHECK(cfg.alpha_bar == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(cfg.M_bar == doctest::Approx(2666.6666666667).epsilon(1e-9));
}

TEST_CASE("archimedes identity holds for a curved bottom") {
  // parabolic gap profile, still within (0, h0)
  std::vector<double> xs, vs;
  for (int i = 0; i <= 400; ++i) {
    const double x = -1.0 + 0.005 * i;
    xs.push_back(x);
    vs.push_back(0.8 + 0.5 * x * x);
  }
  const PhysicalConfig cfg = build_config(9.81, 1000, 2, 1, 10, 10, HeqProfile::sampled(xs, vs));
  const double integral =
      trapezoid_refined([&](double x) { return cfg.h0 - cfg.h_eq(x); }, -1, 1, 1e-12).value;
  CHECK(cfg.m == doctest::Approx(cfg.rho * integral).epsilon(1e-10));
  CHECK(cfg.M_bar > cfg.m);
  CHECK(cfg.alpha_bar > 0);
}

TEST_CASE("h_eq token parsing") {
  const HeqProfile p = HeqProfile::parse_token("flat:0.75");
  CHECK(p.is_flat());
  CHECK(p.flat_value() == doctest::Approx(0.75));
  CHECK_THROWS_AS(HeqProfile::parse_token("flat:abc"), ConfigError);
  CHECK_THROWS_AS(HeqProfile::parse_token("wavy:1"), ConfigError);
}
