#include "floatctl/state.hpp"

#include <cmath>
#include <sstream>

#include "floatctl/detail/closure.hpp"
#include "floatctl/errors.hpp"
#include "floatctl/quadrature.hpp"

namespace floatctl {

namespace {

void require_same_grid(const State& a, const State& b) {
  if (!a.grid || !b.grid || !a.grid->same_as(*b.grid))
    throw std::invalid_argument("state grid mismatch");
}

// diagonal grid quadratures matching the generator norm exactly
double zeta_dot(const Eigen::VectorXd& u, const Eigen::VectorXd& v, double h) {
  const int n = static_cast<int>(u.size()) - 1;
  double s = 0.0;
  for (int j = 0; j <= n; ++j) s += detail::zeta_node_weight(j, n) * u[j] * v[j];
  return s * h;
}

double q_dot(const Eigen::VectorXd& u, const Eigen::VectorXd& v, double h, int n) {
  // u, v hold interior nodes 1..n-1
  double s = 0.0;
  for (int i = 1; i <= n - 1; ++i) s += detail::q_node_weight(i, n) * u[i - 1] * v[i - 1];
  return s * h;
}

} // namespace

State State::zero(GridPtr grid) {
  State z;
  z.grid = std::move(grid);
  z.zeta = Eigen::VectorXd::Zero(z.grid->zeta_size());
  z.q = Eigen::VectorXd::Zero(z.grid->q_size());
  return z;
}

State& State::operator+=(const State& other) {
  require_same_grid(*this, other);
  zeta += other.zeta;
  q += other.q;
  qi_avg += other.qi_avg;
  delta += other.delta;
  eta += other.eta;
  return *this;
}

State& State::operator-=(const State& other) {
  require_same_grid(*this, other);
  zeta -= other.zeta;
  q -= other.q;
  qi_avg -= other.qi_avg;
  delta -= other.delta;
  eta -= other.eta;
  return *this;
}

State& State::operator*=(double a) {
  zeta *= a;
  q *= a;
  qi_avg *= a;
  delta *= a;
  eta *= a;
  return *this;
}

State operator+(State a, const State& b) { return a += b; }
State operator-(State a, const State& b) { return a -= b; }
State operator*(double a, State z) { return z *= a; }

Eigen::VectorXd q_full_component(const State& z, int side) {
  const auto& g = *z.grid;
  if (side < 0) {
    Eigen::VectorXd full(g.n_minus() + 1);
    full[0] = 0.0; // wall at -L
    full.segment(1, g.n_minus() - 1) = z.q.head(g.n_minus() - 1);
    full[g.n_minus()] = z.q_at_minus_l();
    return full;
  }
  Eigen::VectorXd full(g.n_plus() + 1);
  full[0] = z.q_at_plus_l();
  full.segment(1, g.n_plus() - 1) = z.q.tail(g.n_plus() - 1);
  full[g.n_plus()] = 0.0; // wall at L'
  return full;
}

double inner_product(const State& a, const State& b, const PhysicalConfig& cfg) {
  require_same_grid(a, b);
  const auto& g = *a.grid;
  const int nzl = g.n_minus() + 1;
  const int nm = g.n_minus(), np = g.n_plus();

  double zz = zeta_dot(a.zeta.head(nzl), b.zeta.head(nzl), g.h_minus()) +
              zeta_dot(a.zeta.tail(np + 1), b.zeta.tail(np + 1), g.h_plus());
  double qq = q_dot(a.q.head(nm - 1), b.q.head(nm - 1), g.h_minus(), nm) +
              q_dot(a.q.tail(np - 1), b.q.tail(np - 1), g.h_plus(), np);

  return 0.5 * cfg.rho * cfg.g * zz + 0.5 * cfg.rho / cfg.h0 * qq +
         cfg.rho * cfg.l * cfg.alpha_bar * a.qi_avg * b.qi_avg +
         cfg.rho * cfg.g * cfg.l * a.delta * b.delta + 0.5 * cfg.M_bar * a.eta * b.eta;
}

double norm(const State& z, const PhysicalConfig& cfg) {
  return std::sqrt(std::max(0.0, inner_product(z, z, cfg)));
}

EnergyBreakdown total_energy(const State& z, const PhysicalConfig& cfg) {
  EnergyBreakdown e;
  e.variable = inner_product(z, z, cfg);
  e.offset = 0.5 * cfg.rho * cfg.g *
             trapezoid_refined([&](double x) {
               const double d = cfg.h_eq(x) - cfg.h0;
               return d * d;
             }, -cfg.l, cfg.l).value;
  e.total = e.variable + e.offset;
  return e;
}

namespace {

// the volume functional uses the generator's zeta quadrature weights, which
// makes it an exact invariant of the discrete flow
double weighted_zeta_sum(const State& z, bool absolute) {
  const auto& g = *z.grid;
  const int nm = g.n_minus(), np = g.n_plus();
  double s = 0.0;
  for (int j = 0; j <= nm; ++j) {
    const double v = absolute ? std::abs(z.zeta[j]) : z.zeta[j];
    s += g.h_minus() * detail::zeta_node_weight(j, nm) * v;
  }
  for (int j = 0; j <= np; ++j) {
    const double v = absolute ? std::abs(z.zeta[nm + 1 + j]) : z.zeta[nm + 1 + j];
    s += g.h_plus() * detail::zeta_node_weight(j, np) * v;
  }
  return s;
}

} // namespace

double volume_residual(const State& z) {
  return weighted_zeta_sum(z, false) + 2.0 * z.grid->l() * z.delta;
}

double volume_scale(const State& z) {
  return weighted_zeta_sum(z, true) + 2.0 * z.grid->l() * std::abs(z.delta) + 1e-300;
}

void check_volume_constraint(const State& z, double rel_tol) {
  const double r = std::abs(volume_residual(z));
  const double scale = volume_scale(z);
  if (r > rel_tol * scale && r > 1e-14) {
    std::ostringstream os;
    os << "volume constraint violated: residual " << r << ", scale " << scale;
    throw NumericalError(os.str());
  }
}

State project_symmetric(const State& z) {
  const auto& g = *z.grid;
  if (!g.mirror_symmetric())
    throw std::invalid_argument("project_symmetric requires L = L' and a mirror grid");
  const int n = g.n_minus();
  State p = z;
  p.qi_avg = 0.0;
  // zeta: even part; left node j mirrors right node n-j
  for (int j = 0; j <= n; ++j) {
    const int r = (n + 1) + (n - j);
    const double even = 0.5 * (z.zeta[j] + z.zeta[r]);
    p.zeta[j] = even;
    p.zeta[r] = even;
  }
  // q: odd part; left interior node i_phys mirrors right interior node n-i_phys
  for (int i = 1; i <= n - 1; ++i) {
    const int left = i - 1;
    const int right = (n - 1) + (n - i) - 1;
    const double odd = 0.5 * (z.q[left] - z.q[right]);
    p.q[left] = odd;
    p.q[right] = -odd;
  }
  return p;
}

double asymmetry_norm(const State& z, const PhysicalConfig& cfg) {
  return norm(z - project_symmetric(z), cfg);
}

} // namespace floatctl
