#include "floatctl/spectral.hpp"

#include <Eigen/SVD>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "floatctl/errors.hpp"
#include "floatctl/generator.hpp"
#include "floatctl/quadrature.hpp"
#include "floatctl/parallel.hpp"

namespace floatctl {

int max_threads() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  if (const char* env = std::getenv("FLOATCTL_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1) hw = std::min(hw, cap);
  }
  return hw;
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  const int workers = std::min(max_threads(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

namespace {

struct Trig {
  double fL, gL, fLp, gLp;
};

Trig eval_trig(double omega, const PhysicalConfig& cfg) {
  const double c0 = cfg.wave_speed();
  Trig t;
  t.fL = std::sin(omega * (cfg.L - cfg.l) / c0);
  t.gL = std::cos(omega * (cfg.L - cfg.l) / c0);
  t.fLp = std::sin(omega * (cfg.Lp - cfg.l) / c0);
  t.gLp = std::cos(omega * (cfg.Lp - cfg.l) / c0);
  return t;
}

double spring_term(double omega, const PhysicalConfig& cfg) {
  return cfg.M_bar * omega * omega - 2.0 * cfg.rho * cfg.g * cfg.l;
}

} // namespace

double char_residual_general(double omega, const PhysicalConfig& cfg, double* scale) {
  if (omega == 0.0)
    throw std::invalid_argument("char_residual_general: omega = 0 lies in the resolvent set");
  const Trig t = eval_trig(omega, cfg);
  const double D = spring_term(omega, cfg);
  const double sg = std::sqrt(cfg.g / cfg.h0);
  const double P = 2.0 * cfg.rho * cfg.l * cfg.l * omega + D / (cfg.l * cfg.alpha_bar * omega);
  const double t1 = -sg * P * (t.fL * t.gLp + t.fLp * t.gL);
  const double t2 = 2.0 * D * t.fL * t.fLp;
  const double t3 = 4.0 * cfg.rho * cfg.g * cfg.l / (cfg.h0 * cfg.alpha_bar) * t.gL * t.gLp;
  if (scale) {
    *scale = std::max({std::abs(sg * P), std::abs(2.0 * D),
                       std::abs(4.0 * cfg.rho * cfg.g * cfg.l / (cfg.h0 * cfg.alpha_bar))});
  }
  return t1 + t2 + t3;
}

double char_residual_symmetric(double omega, const PhysicalConfig& cfg, double* scale) {
  if (!cfg.symmetric())
    throw std::invalid_argument("char_residual_symmetric requires L = L'");
  if (omega == 0.0)
    throw std::invalid_argument("char_residual_symmetric: omega = 0 lies in the resolvent set");
  const Trig t = eval_trig(omega, cfg);
  const double D = spring_term(omega, cfg);
  const double term1 = D * t.fL;
  const double term2 = std::sqrt(cfg.g / cfg.h0) * 2.0 * cfg.rho * cfg.l * cfg.l * omega * t.gL;
  if (scale) *scale = std::max(std::abs(D), std::abs(term2 / std::max(std::abs(t.gL), 1e-3)));
  return term1 - term2;
}

namespace {

double residual(double omega, const PhysicalConfig& cfg, SymmetryClass branch,
                double* scale = nullptr) {
  return branch == SymmetryClass::symmetric ? char_residual_symmetric(omega, cfg, scale)
                                            : char_residual_general(omega, cfg, scale);
}

double refine_root(double a, double b, const PhysicalConfig& cfg, SymmetryClass branch,
                   double rel_tol) {
  double fa = residual(a, cfg, branch);
  double fb = residual(b, cfg, branch);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  for (int it = 0; it < 200 && (b - a) > 1e-15 * std::max(1.0, b); ++it) {
    const double mid = 0.5 * (a + b);
    const double fm = residual(mid, cfg, branch);
    if (fm == 0.0) return mid;
    if ((fa < 0) != (fm < 0)) {
      b = mid;
      fb = fm;
    } else {
      a = mid;
      fa = fm;
    }
  }
  // one Newton polish with a central-difference derivative
  double w = 0.5 * (a + b);
  const double dw = std::max(std::abs(w), 1.0) * 1e-7;
  const double deriv = (residual(w + dw, cfg, branch) - residual(w - dw, cfg, branch)) / (2 * dw);
  if (deriv != 0.0) {
    const double w_new = w - residual(w, cfg, branch) / deriv;
    if (w_new > 0 && std::abs(w_new - w) < 10 * (b - a) + dw) w = w_new;
  }
  double scale = 0.0;
  const double r = residual(w, cfg, branch, &scale);
  if (std::abs(r) > rel_tol * scale) {
    std::ostringstream os;
    os << "root refinement stalled at omega=" << w << " residual=" << r << " scale=" << scale;
    throw NumericalError(os.str());
  }
  return w;
}

} // namespace

std::vector<double> find_eigenvalues(const PhysicalConfig& cfg, int count, SymmetryClass branch,
                                     const RootSearchOptions& opts) {
  if (count < 1) throw std::invalid_argument("find_eigenvalues: count must be >= 1");
  const double c0 = cfg.wave_speed();
  const double span_max = std::max(cfg.L - cfg.l, cfg.Lp - cfg.l);
  const double span_min = std::min(cfg.L - cfg.l, cfg.Lp - cfg.l);
  // the general branch interleaves two wave families, so its mean spacing is
  // set by the combined span; near-rational span ratios cluster those roots
  // into pairs whose gap shrinks like 1/omega, hence the omega-adaptive step
  const double family_spacing = branch == SymmetryClass::symmetric
                                    ? M_PI * c0 / span_max
                                    : M_PI * c0 / (span_max + span_min);
  const double base_step = opts.step_fraction * family_spacing;
  const double omega_scale = M_PI * c0 / span_max;
  const double hi = (count + 1) * M_PI * c0 / span_min;
  auto local_step = [&](double w) { return base_step / (1.0 + w / omega_scale); };

  std::vector<std::pair<double, double>> brackets;
  {
    double prev_w = 1e-9 * base_step;
    double prev_r = residual(prev_w, cfg, branch);
    double w = local_step(prev_w);
    while (prev_w < hi) {
      const double r = residual(w, cfg, branch);
      if (r == 0.0 || (prev_r < 0) != (r < 0)) brackets.emplace_back(prev_w, w);
      prev_w = w;
      prev_r = r;
      w += local_step(w);
    }
  }
  // completeness pass: re-scan every sub-interval between detected crossings
  // at 8x resolution and insert any crossings the coarse pass stepped over
  for (int pass = 0; pass < 3; ++pass) {
    std::vector<std::pair<double, double>> extra;
    std::vector<double> edges{1e-9 * base_step};
    for (auto& b : brackets) {
      edges.push_back(b.first);
      edges.push_back(b.second);
    }
    edges.push_back(hi);
    bool grew = false;
    for (size_t i = 0; i + 1 < edges.size(); i += 1) {
      const double a = edges[i], b = edges[i + 1];
      if (b - a <= 0) continue;
      const int sub = std::max(8, static_cast<int>(std::ceil((b - a) / local_step(b) * 8)));
      double pw = a, pr = residual(pw, cfg, branch);
      for (int s = 1; s <= sub; ++s) {
        const double w = a + (b - a) * s / sub;
        const double r = residual(w, cfg, branch);
        if ((pr < 0) != (r < 0)) {
          // skip crossings already represented by an existing bracket
          bool known = false;
          for (auto& kb : brackets)
            if (pw < kb.second && w > kb.first) known = true;
          if (!known) {
            extra.emplace_back(pw, w);
            grew = true;
          }
        }
        pw = w;
        pr = r;
      }
    }
    if (!grew) break;
    brackets.insert(brackets.end(), extra.begin(), extra.end());
    std::sort(brackets.begin(), brackets.end());
  }

  if (static_cast<int>(brackets.size()) < count) {
    std::ostringstream os;
    os << "bracket exhaustion: found " << brackets.size() << " sign changes in (0, " << hi
       << "] but " << count << " roots requested";
    throw NumericalError(os.str());
  }
  brackets.resize(count);

  std::vector<double> roots(brackets.size());
  std::atomic<bool> failed{false};
  std::string fail_msg;
  std::mutex fail_mutex;
  parallel_for(static_cast<int>(brackets.size()), [&](int i) {
    try {
      roots[i] = refine_root(brackets[i].first, brackets[i].second, cfg, branch,
                             opts.residual_rel_tol);
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lk(fail_mutex);
      failed = true;
      fail_msg = e.what();
    }
  });
  if (failed) throw NumericalError(fail_msg);
  return roots;
}

double Mode::psi_at(double x) const {
  const double c0 = wave_speed;
  if (x <= -l) return K1 * std::sin(omega * (L + x) / c0);
  return K2 * std::sin(omega * (Lp - x) / c0);
}

double Mode::phi_im_at(double x) const {
  const double c0 = wave_speed;
  if (x <= -l) return K1 / c0 * std::cos(omega * (L + x) / c0);
  return -K2 / c0 * std::cos(omega * (Lp - x) / c0);
}

namespace {

// closed-form ||phi||_X^2 (the reciprocal of gamma^2)
double norm2_closed_form(double omega, double K1, double K2, const PhysicalConfig& cfg) {
  const Trig t = eval_trig(omega, cfg);
  const double l = cfg.l;
  const double sq = (cfg.rho * l * cfg.alpha_bar / 4.0 + cfg.M_bar / (8.0 * l * l) +
                     cfg.rho * cfg.g / (4.0 * omega * omega * l));
  const double cross = (cfg.rho * l * cfg.alpha_bar / 2.0 - cfg.M_bar / (4.0 * l * l) -
                        cfg.rho * cfg.g / (2.0 * omega * omega * l));
  return sq * (K2 * K2 * t.fLp * t.fLp + K1 * K1 * t.fL * t.fL) +
         cross * K1 * K2 * t.fL * t.fLp +
         cfg.rho / (2.0 * cfg.h0) * (K1 * K1 * (cfg.L - l) + K2 * K2 * (cfg.Lp - l));
}

double norm2_quadrature(const Mode& m, const PhysicalConfig& cfg, double rel_tol) {
  auto phi2 = [&](double x) { const double v = m.phi_im_at(x); return v * v; };
  auto psi2 = [&](double x) { const double v = m.psi_at(x); return v * v; };
  const double field_phi = trapezoid_refined(phi2, -cfg.L, -cfg.l, rel_tol).value +
                           trapezoid_refined(phi2, cfg.l, cfg.Lp, rel_tol).value;
  const double field_psi = trapezoid_refined(psi2, -cfg.L, -cfg.l, rel_tol).value +
                           trapezoid_refined(psi2, cfg.l, cfg.Lp, rel_tol).value;
  return 0.5 * cfg.rho * cfg.g * field_phi + 0.5 * cfg.rho / cfg.h0 * field_psi +
         cfg.rho * cfg.l * cfg.alpha_bar * m.c * m.c + cfg.rho * cfg.g * cfg.l * m.a_im * m.a_im +
         0.5 * cfg.M_bar * m.b * m.b;
}

} // namespace

Mode assemble_mode(double omega, const PhysicalConfig& cfg, SymmetryClass branch, int k_index) {
  Mode m;
  m.omega = omega;
  m.k_index = k_index;
  m.branch = branch;
  m.wave_speed = cfg.wave_speed();
  m.L = cfg.L;
  m.l = cfg.l;
  m.Lp = cfg.Lp;

  const Trig t = eval_trig(omega, cfg);
  const double D = spring_term(omega, cfg);
  const double sg = std::sqrt(cfg.g / cfg.h0);

  if (branch == SymmetryClass::symmetric) {
    if (!cfg.symmetric()) throw std::invalid_argument("symmetric branch requires L = L'");
    double scale = 0.0;
    const double r = char_residual_symmetric(omega, cfg, &scale);
    if (std::abs(r) > 1e-8 * scale)
      throw NumericalError("assemble_mode: omega is not a root of the symmetric equation");
    m.K1 = 1.0;
    m.K2 = -1.0;
  } else {
    double scale = 0.0;
    const double r = char_residual_general(omega, cfg, &scale);
    if (std::abs(r) > 1e-8 * scale)
      throw NumericalError("assemble_mode: omega is not a root of the characteristic equation");

    Eigen::Matrix2d rows;
    rows(0, 0) = sg / (cfg.l * cfg.alpha_bar * omega) * t.gL - t.fL;
    rows(0, 1) = sg / (cfg.l * cfg.alpha_bar * omega) * t.gLp - t.fLp;
    rows(1, 0) = sg * 2.0 * cfg.rho * cfg.l * cfg.l * omega * t.gL - D * t.fL;
    rows(1, 1) = D * t.fLp - sg * 2.0 * cfg.rho * cfg.l * cfg.l * omega * t.gLp;

    const double n0 = rows.row(0).norm();
    const double n1 = rows.row(1).norm();
    // scale-normalize each row before ranking; near a root at least one row
    // must admit a null vector, both vanishing signals a double eigenvalue
    const double s0 = std::max(std::abs(sg / (cfg.l * cfg.alpha_bar * omega)), 1.0);
    const double s1 = std::max(std::abs(sg * 2.0 * cfg.rho * cfg.l * cfg.l * omega), std::abs(D));
    if (n0 / s0 < 1e-12 && n1 / s1 < 1e-12)
      throw NumericalError(
          "assemble_mode: rank-0 coefficient system (double eigenvalue candidate); "
          "see detect_resonance");
    Eigen::Matrix2d scaled;
    scaled.row(0) = rows.row(0) / std::max(n0, 1e-300);
    scaled.row(1) = rows.row(1) / std::max(n1, 1e-300);
    Eigen::JacobiSVD<Eigen::Matrix2d> svd(scaled, Eigen::ComputeFullV);
    if (svd.singularValues()(1) > 1e-6 * svd.singularValues()(0))
      throw NumericalError("assemble_mode: 2x2 system is numerically rank-2; omega not a root");
    Eigen::Vector2d K = svd.matrixV().col(1);
    if (std::abs(K(0)) >= std::abs(K(1))) {
      if (K(0) < 0) K = -K;
    } else if (K(1) < 0) {
      K = -K;
    }
    K /= K.cwiseAbs().maxCoeff();
    m.K1 = K(0);
    m.K2 = K(1);
  }

  const double psi_l = m.psi_at(cfg.l);
  const double psi_ml = m.psi_at(-cfg.l);
  m.c = 0.5 * (psi_l + psi_ml);
  m.a_im = (psi_l - psi_ml) / (2.0 * omega * cfg.l);
  m.b = -(psi_l - psi_ml) / (2.0 * cfg.l);

  double n2;
  if (branch == SymmetryClass::symmetric) {
    // gamma^{-2} = (M/(2l^2) + rho g/(omega^2 l)) K^2 f^2 + (rho/h0) K^2 (L-l)
    const double K = 1.0;
    n2 = (cfg.M_bar / (2.0 * cfg.l * cfg.l) + cfg.rho * cfg.g / (omega * omega * cfg.l)) * K * K *
             t.fL * t.fL +
         cfg.rho / cfg.h0 * K * K * (cfg.L - cfg.l);
  } else {
    n2 = norm2_closed_form(omega, m.K1, m.K2, cfg);
  }
  m.gamma = 1.0 / std::sqrt(n2);

  const double n2_quad = norm2_quadrature(m, cfg, 1e-12);
  if (std::abs(n2_quad - n2) > 1e-6 * std::abs(n2)) {
    std::ostringstream os;
    os << "assemble_mode: closed-form norm " << n2 << " disagrees with quadrature " << n2_quad;
    throw NumericalError(os.str());
  }
  return m;
}

ModePair sample_mode_pair(const Mode& mode, const GridPtr& grid) {
  const double s = std::sqrt(2.0) * mode.gamma;
  ModePair pair{State::zero(grid), State::zero(grid)};
  for (int i = 0; i < grid->q_size(); ++i) pair.p.q[i] = s * mode.psi_at(grid->q_node(i));
  pair.p.qi_avg = s * mode.c;
  pair.p.eta = s * mode.b;
  for (int j = 0; j < grid->zeta_size(); ++j)
    pair.r.zeta[j] = s * mode.phi_im_at(grid->zeta_node(j));
  pair.r.delta = s * mode.a_im;
  return pair;
}

double verify_eigenpair(const Mode& mode, const PhysicalConfig& cfg, int cells_per_side) {
  auto grid = make_grid(cfg, cells_per_side);
  DiscreteGenerator gen(cfg, grid);
  const ModePair pr = sample_mode_pair(mode, grid);
  const State Ap = gen.apply(pr.p);
  const State Ar = gen.apply(pr.r);
  const double ep = norm(Ap + mode.omega * pr.r, cfg);
  const double er = norm(Ar - mode.omega * pr.p, cfg);
  return std::sqrt(0.5 * (ep * ep + er * er));
}

ResonanceReport detect_resonance(const PhysicalConfig& cfg) {
  ResonanceReport r;
  r.kappa = cfg.kappa;
  r.kappa_positive = cfg.kappa > 0;
  r.flat_bottom = cfg.h_eq.is_flat();
  r.depth_condition = cfg.h0 > 2.0 * std::sqrt(2.0 / 3.0) * cfg.l;
  if (r.depth_condition) {
    const double root = std::sqrt(cfg.h0 * cfg.h0 - 8.0 / 3.0 * cfg.l * cfg.l);
    r.band_low = 0.5 * (cfg.h0 - root);
    r.band_high = 0.5 * (cfg.h0 + root);
  }

  bool band_ok = false;
  if (r.flat_bottom && r.depth_condition) {
    const double he = cfg.h_eq.flat_value();
    band_ok = (he > 0 && he <= r.band_low) || (he >= r.band_high && he < cfg.h0);
  }

  if (r.kappa_positive) {
    r.omega_candidate = std::sqrt(2.0 * cfg.rho * cfg.g * cfg.l / cfg.kappa);
    const double mu = std::sqrt(2.0 * cfg.rho * cfg.l / (cfg.kappa * cfg.h0));
    r.integer_value = mu * (cfg.Lp - cfg.L) / M_PI;
    r.integer_distance = std::abs(r.integer_value - std::round(r.integer_value));
    r.integer_holds = r.integer_distance <= 1e-9 * std::max(1.0, std::abs(r.integer_value));
    const double arg = mu * (cfg.L - cfg.l);
    r.tan_rhs = std::sqrt(cfg.kappa / (2.0 * cfg.rho * cfg.l * cfg.h0)) / (cfg.l * cfg.alpha_bar);
    r.tan_lhs = std::tan(arg);
    // pole-free residual: sin(arg) - rhs cos(arg)
    r.tan_residual = std::sin(arg) - r.tan_rhs * std::cos(arg);
    r.tan_holds = std::abs(r.tan_residual) <= 1e-9 * (1.0 + std::abs(r.tan_rhs));
    r.double_candidate = r.integer_holds && r.tan_holds;
  }

  if (band_ok) {
    r.simplicity = ResonanceReport::Simplicity::guaranteed;
  } else if (r.double_candidate) {
    r.simplicity = ResonanceReport::Simplicity::excluded_candidate;
  } else {
    r.simplicity = ResonanceReport::Simplicity::undetermined;
  }
  return r;
}

namespace {

// best rational approximation p/q of x with q <= qmax, by continued fractions
bool to_rational(double x, long long qmax, long long& p, long long& q) {
  long long p0 = 1, q0 = 0, p1 = static_cast<long long>(std::floor(x)), q1 = 1;
  double frac = x - std::floor(x);
  for (int it = 0; it < 64; ++it) {
    if (std::abs(x - double(p1) / double(q1)) <= 1e-12 * std::max(1.0, std::abs(x))) {
      p = p1;
      q = q1;
      return true;
    }
    if (frac == 0.0) break;
    const double inv = 1.0 / frac;
    const long long a = static_cast<long long>(std::floor(inv));
    frac = inv - std::floor(inv);
    const long long p2 = a * p1 + p0;
    const long long q2 = a * q1 + q0;
    if (q2 > qmax) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  if (std::abs(x - double(p1) / double(q1)) <= 1e-12 * std::max(1.0, std::abs(x))) {
    p = p1;
    q = q1;
    return true;
  }
  return false;
}

} // namespace

GapReport gap_statistics(const std::vector<double>& omegas, const PhysicalConfig& cfg) {
  GapReport rep;
  const double c0 = cfg.wave_speed();
  rep.asymptotic_gap_left = M_PI * c0 / (cfg.L - cfg.l);
  rep.asymptotic_gap_right = M_PI * c0 / (cfg.Lp - cfg.l);
  rep.ratio = (cfg.Lp - cfg.l) / (cfg.L - cfg.l);

  long long p = 0, q = 0;
  if (to_rational(rep.ratio, 1000000, p, q)) {
    rep.ratio_p = p;
    rep.ratio_q = q;
    // (r+1)/r form iff (p-q) divides q with integer r = q/(p-q) != 0
    const long long d = p - q;
    if (d != 0 && q % d == 0 && q / d != 0) {
      rep.ratio_class = GapReport::RatioClass::rational_one_over_k;
    } else if (d == 0) {
      rep.ratio_class = GapReport::RatioClass::rational_uniform_gap; // ratio 1: one family
    } else {
      rep.ratio_class = GapReport::RatioClass::rational_uniform_gap;
    }
  } else {
    rep.ratio_class = GapReport::RatioClass::irrational;
  }

  if (omegas.size() < 2) return rep;
  rep.empty = false;
  rep.min_gap = std::numeric_limits<double>::infinity();
  rep.min_k_gap = std::numeric_limits<double>::infinity();
  for (size_t k = 0; k + 1 < omegas.size(); ++k) {
    const double gap = omegas[k + 1] - omegas[k];
    if (gap < rep.min_gap) {
      rep.min_gap = gap;
      rep.min_gap_k = static_cast<int>(k + 1);
    }
    const double kgap = (k + 1) * gap;
    if (kgap < rep.min_k_gap) {
      rep.min_k_gap = kgap;
      rep.min_k_gap_k = static_cast<int>(k + 1);
    }
  }
  return rep;
}

SpectrumReport compute_spectrum(const PhysicalConfig& cfg, int count, SymmetryClass branch,
                                const RootSearchOptions& opts) {
  SpectrumReport rep;
  const auto roots = find_eigenvalues(cfg, count, branch, opts);
  rep.modes.reserve(roots.size());
  for (size_t k = 0; k < roots.size(); ++k)
    rep.modes.push_back(assemble_mode(roots[k], cfg, branch, static_cast<int>(k + 1)));
  rep.gaps = gap_statistics(roots, cfg);
  rep.resonance = detect_resonance(cfg);

  const double span_max = std::max(cfg.L - cfg.l, cfg.Lp - cfg.l);
  const double min_sep = opts.cluster_fraction * M_PI * cfg.wave_speed() / span_max;
  for (size_t k = 0; k + 1 < roots.size(); ++k)
    if (roots[k + 1] - roots[k] < min_sep) rep.cluster_flags.push_back(static_cast<int>(k + 1));
  return rep;
}

double mode_inner_product_refined(const Mode& a, const Mode& b, const PhysicalConfig& cfg,
                                  bool p_part, double rel_tol) {
  const double s = 2.0 * a.gamma * b.gamma;
  if (p_part) {
    auto f = [&](double x) { return a.psi_at(x) * b.psi_at(x); };
    const double field = trapezoid_refined(f, -cfg.L, -cfg.l, rel_tol).value +
                         trapezoid_refined(f, cfg.l, cfg.Lp, rel_tol).value;
    return s * (0.5 * cfg.rho / cfg.h0 * field + cfg.rho * cfg.l * cfg.alpha_bar * a.c * b.c +
                0.5 * cfg.M_bar * a.b * b.b);
  }
  auto f = [&](double x) { return a.phi_im_at(x) * b.phi_im_at(x); };
  const double field = trapezoid_refined(f, -cfg.L, -cfg.l, rel_tol).value +
                       trapezoid_refined(f, cfg.l, cfg.Lp, rel_tol).value;
  return s * (0.5 * cfg.rho * cfg.g * field + cfg.rho * cfg.g * cfg.l * a.a_im * b.a_im);
}

} // namespace floatctl
