#pragma once

#include <string>
#include <vector>

namespace floatctl {

/// Even profile h_eq(x) on [-l, l]: the gap between the object bottom and the
/// tank bottom at equilibrium. Either a constant ("flat") or a sampled even
/// profile evaluated by piecewise-linear interpolation.
class HeqProfile {
public:
  static HeqProfile flat(double value);

  /// Samples need not be sorted symmetrically; they are symmetrized as
  /// (f(x)+f(-x))/2. Throws ConfigError if the asymmetry exceeds 1e-8
  /// relative to the profile scale.
  static HeqProfile sampled(std::vector<double> x, std::vector<double> values);

  double operator()(double x) const;
  bool is_flat() const { return flat_; }
  double flat_value() const { return value_; }

  /// Parses "flat:<value>" or builds from samples loaded elsewhere.
  static HeqProfile parse_token(const std::string& token);

  HeqProfile() = default; // flat 1.0; placeholder until build_config fills it

private:
  bool flat_ = true;
  double value_ = 1.0;
  std::vector<double> xs_, vs_; // symmetric samples, ascending x
};

/// Tank geometry, fluid constants, object bottom profile, and the derived
/// constants of the linearized model.
struct PhysicalConfig {
  // raw inputs
  double g;    // gravity (m/s^2)
  double rho;  // fluid density (kg/m^3)
  double h0;   // rest water depth (m)
  double l;    // object half-width (m)
  double L;    // left tank half-extent, left wall at x = -L (m)
  double Lp;   // right extent, right wall at x = +Lp (m)
  HeqProfile h_eq;

  // derived
  double m;          // object mass per unit width, rho * int (h0 - h_eq) (kg/m)
  double alpha_bar;  // alpha(0) (1/m)
  double M_bar;      // M(0) (kg/m)
  double kappa;      // M_bar - 2 rho l^3 alpha_bar (kg/m)
  double tau0;       // 2 (L - l) / sqrt(g h0) (s)

  bool symmetric() const { return L == Lp; }
  double wave_speed() const; // sqrt(g h0)
};

/// Validates the raw inputs, computes the derived constants by
/// Richardson-checked composite trapezoid, and returns the full config.
/// Throws ConfigError on geometry violations, non-positive depth, h_eq
/// outside (0, h0), or an h_eq profile that is not even within tolerance.
PhysicalConfig build_config(double g, double rho, double h0, double l, double L, double Lp,
                            const HeqProfile& h_eq);

} // namespace floatctl
