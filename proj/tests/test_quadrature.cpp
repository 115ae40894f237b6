#include <doctest.h>

#include <cmath>

#include "floatctl/quadrature.hpp"

using namespace floatctl;

TEST_CASE("trapezoid converges at second order") {
  auto f = [](double x) { return std::sin(x); };
  const double exact = 1.0 - std::cos(1.0);
  const double e1 = std::abs(trapezoid(f, 0, 1, 64) - exact);
  const double e2 = std::abs(trapezoid(f, 0, 1, 128) - exact);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("refined trapezoid hits the requested tolerance") {
  auto f = [](double x) { return std::exp(x) * std::cos(3 * x); };
  const double exact = (std::exp(1.0) * (std::cos(3.0) + 3 * std::sin(3.0)) - 1.0) / 10.0;
  const QuadResult r = trapezoid_refined(f, 0, 1, 1e-12);
  CHECK(std::abs(r.value - exact) < 1e-10 * std::abs(exact));
}

TEST_CASE("richardson error estimate tracks the true error") {
  auto f = [](double x) { return 1.0 / (1.0 + x * x); };
  const double exact = std::atan(2.0);
  const QuadResult r = trapezoid_refined(f, 0, 2, 1e-10, 32);
  CHECK(std::abs(r.value - exact) < 10 * r.error_est + 1e-14);
}
