#pragma once

#include <optional>
#include <vector>

#include "floatctl/state.hpp"

namespace floatctl {

/// One eigenpair of the generator. The eigenvalue is i*omega; the eigenvector
/// is phi = (varphi, psi, c, a, b) with varphi and a purely imaginary when psi
/// is real, so the imaginary components are stored as real amplitudes:
/// varphi = i * phi_im, a = i * a_im.
struct Mode {
  double omega = 0.0;
  int k_index = 0;
  SymmetryClass branch = SymmetryClass::general;
  double K1 = 0.0, K2 = 0.0; // branch constants (K1 = -K2 = 1 on the symmetric branch)
  double gamma = 0.0;        // normalization: ||gamma * phi||_X = 1
  double c = 0.0;            // <psi>
  double a_im = 0.0;         // a = i a_im, a_im = (psi(l)-psi(-l))/(2 omega l)
  double b = 0.0;            // -(psi(l)-psi(-l))/(2 l)

  // geometry snapshot for the analytic evaluators
  double wave_speed = 0.0, L = 0.0, l = 0.0, Lp = 0.0;

  double psi_at(double x) const;
  double phi_im_at(double x) const;

  /// |B* phi_hat| = |gamma b / 2| for this mode.
  double control_authority() const { return std::abs(gamma * b) / 2.0; }
};

/// Real orthonormal pair spanning the (+k, -k) complex eigenspace:
/// p = sqrt(2) gamma (0, psi, c, 0, b), r = sqrt(2) gamma (phi_im, 0, 0, a_im, 0).
struct ModePair {
  State p; // carries (q, <q_i>, eta)
  State r; // carries (zeta, delta)
};

/// Nodal sampling of the realified unit pair on a grid.
ModePair sample_mode_pair(const Mode& mode, const GridPtr& grid);

struct GapReport {
  bool empty = true;
  double min_gap = 0.0;
  int min_gap_k = 0;
  double min_k_gap = 0.0;
  int min_k_gap_k = 0;
  double asymptotic_gap_left = 0.0;  // pi sqrt(g h0)/(L - l)
  double asymptotic_gap_right = 0.0; // pi sqrt(g h0)/(L' - l)
  double ratio = 0.0;                // (L' - l)/(L - l)
  enum class RatioClass { rational_uniform_gap, rational_one_over_k, irrational } ratio_class =
      RatioClass::irrational;
  long long ratio_p = 0, ratio_q = 0; // reduced fraction when rational
};

struct ResonanceReport {
  double kappa = 0.0;
  bool kappa_positive = false;
  double omega_candidate = 0.0; // sqrt(2 rho g l / kappa), kappa > 0 only
  // integer condition: sqrt(2 rho l/(kappa h0)) (L'-L)/pi in Z
  double integer_value = 0.0;
  double integer_distance = 0.0;
  bool integer_holds = false;
  // tangent condition: tan(sqrt(2 rho l/(kappa h0))(L-l)) = sqrt(kappa/(2 rho l h0))/(l alpha_bar)
  double tan_lhs = 0.0, tan_rhs = 0.0, tan_residual = 0.0;
  bool tan_holds = false;
  bool double_candidate = false; // both conditions hold numerically (never asserted as multiplicity)
  // flat-bottom simplicity criterion
  bool flat_bottom = false;
  bool depth_condition = false; // h0 > 2 sqrt(2/3) l
  double band_low = 0.0, band_high = 0.0;
  enum class Simplicity { guaranteed, excluded_candidate, undetermined } simplicity =
      Simplicity::undetermined;
};

struct SpectrumReport {
  std::vector<Mode> modes; // omegas strictly increasing
  GapReport gaps;
  ResonanceReport resonance;
  std::vector<int> cluster_flags; // k indices where two roots nearly share a bracket
};

/// Left-hand side of the general characteristic equation, in the paper's
/// printed form (even in omega; the +-omega root symmetry is the invariant).
/// scale, when given, receives the magnitude of the largest term for
/// tolerance normalization. Throws for omega = 0 (0 is in the resolvent set).
double char_residual_general(double omega, const PhysicalConfig& cfg, double* scale = nullptr);

/// (M_bar omega^2 - 2 rho g l) f_omega(L) - sqrt(g/h0) 2 rho l^2 omega g_omega(L).
/// Odd in omega. Requires L = L'.
double char_residual_symmetric(double omega, const PhysicalConfig& cfg, double* scale = nullptr);

struct RootSearchOptions {
  double residual_rel_tol = 1e-12; // |residual| <= tol * term scale
  double step_fraction = 0.25;     // of the asymptotic spacing
  double cluster_fraction = 0.05;  // roots closer than this x spacing are flagged
};

/// The N smallest positive roots of the characteristic equation, each
/// bracketed by a sign change and refined by bisection plus a Newton polish.
/// Throws NumericalError on bracket exhaustion (with the scanned range).
std::vector<double> find_eigenvalues(const PhysicalConfig& cfg, int count, SymmetryClass branch,
                                     const RootSearchOptions& opts = {});

/// Builds the eigenvector for a validated root: solves the 2x2 homogeneous
/// system for (K1, K2) on the general branch (null vector of the
/// better-conditioned row), fixes K1 = -K2 = 1 on the symmetric branch, then
/// normalizes via the closed form and cross-checks against a
/// Richardson-refined quadrature of ||phi||_X (must agree to 1e-6 relative).
Mode assemble_mode(double omega, const PhysicalConfig& cfg, SymmetryClass branch,
                   int k_index = 0);

/// ||A_h phi - i omega phi||_X on a grid with the given cells per side,
/// evaluated through the discrete generator; O(h^2) under refinement.
double verify_eigenpair(const Mode& mode, const PhysicalConfig& cfg, int cells_per_side);

ResonanceReport detect_resonance(const PhysicalConfig& cfg);

GapReport gap_statistics(const std::vector<double>& omegas, const PhysicalConfig& cfg);

/// Full spectrum report: roots, modes, gaps, resonance diagnostics.
SpectrumReport compute_spectrum(const PhysicalConfig& cfg, int count, SymmetryClass branch,
                                const RootSearchOptions& opts = {});

/// X inner product of two modes' realified pairs evaluated by
/// Richardson-refined quadrature of the analytic fields (independent of any
/// grid). Used for the orthonormality invariant and the gamma cross-check.
double mode_inner_product_refined(const Mode& a, const Mode& b, const PhysicalConfig& cfg,
                                  bool p_part, double rel_tol = 1e-10);

} // namespace floatctl
