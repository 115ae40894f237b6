#include "floatctl/generator.hpp"

#include <array>
#include <cmath>
#include <map>
#include <vector>

#include "floatctl/detail/closure.hpp"
#include "floatctl/errors.hpp"

namespace floatctl {

namespace detail {

double zeta_node_weight(int j, int n) {
  double w = 1.0;
  if (j < kZoneRows) w = kZetaWeights[j];
  if (n - j < kZoneRows) w = kZetaWeights[n - j];
  return w;
}

double q_node_weight(int i, int n) {
  // q DOFs live at interior nodes 1..n-1
  double w = 1.0;
  if (i <= kZoneCols) w = kQWeights[i - 1];
  if (n - i <= kZoneCols) w = kQWeights[n - i - 1];
  return w;
}

} // namespace detail

namespace {

// packed columns plus weights giving the q value at a component end:
// wall = 0, interface = c -+ l eta
struct NodeDesc {
  std::array<std::pair<int, double>, 2> terms;
  int count = 0;
  void add(int col, double w) { terms[count++] = {col, w}; }
};

} // namespace

DiscreteGenerator::DiscreteGenerator(const PhysicalConfig& cfg, GridPtr grid)
    : cfg_(cfg), grid_(std::move(grid)) {
  using namespace detail;
  const auto& g = *grid_;
  if (g.n_minus() < kMinCells || g.n_plus() < kMinCells)
    throw ConfigError("grid too coarse for the generator: need >= 16 cells per side");
  const int nz = g.zeta_size();
  const int nq = g.q_size();
  dim_ = nz + nq + 3;
  ic_ = nz + nq;
  id_ = ic_ + 1;
  ie_ = ic_ + 2;

  const double rg2 = 0.5 * cfg_.rho * cfg_.g;
  const double rq2 = 0.5 * cfg_.rho / cfg_.h0;

  std::vector<Eigen::Triplet<double>> mt;
  // strictly-upper accumulation keeps S^T = -S exact to the last bit
  std::map<std::pair<int, int>, double> skew_upper;
  auto add_skew = [&](int row, int col, double v) {
    if (v == 0.0 || row == col) return;
    if (row < col)
      skew_upper[{row, col}] += v;
    else
      skew_upper[{col, row}] -= v;
  };

  // one grid component: zeta rows at nodes 0..n, q DOFs at interior nodes;
  // the end values of q are the wall value 0 or the interface trace.
  auto assemble_component = [&](int zeta_base, int n, double h, auto q_col,
                                const NodeDesc& trace_left, const NodeDesc& trace_right) {
    for (int j = 0; j <= n; ++j)
      mt.emplace_back(zeta_base + j, zeta_base + j, rg2 * h * zeta_node_weight(j, n));
    for (int i = 1; i <= n - 1; ++i)
      mt.emplace_back(q_col(i), q_col(i), rq2 * h * q_node_weight(i, n));

    // pairing rows: S[zeta_j, q-col] = -(rho g/2) * block entry; the
    // antisymmetric mirror supplies the q-test rows
    auto add_pair = [&](int j, int node, double block) {
      if (block == 0.0) return;
      if (node == 0) {
        for (int t = 0; t < trace_left.count; ++t)
          add_skew(zeta_base + j, trace_left.terms[t].first,
                   -rg2 * block * trace_left.terms[t].second);
      } else if (node == n) {
        for (int t = 0; t < trace_right.count; ++t)
          add_skew(zeta_base + j, trace_right.terms[t].first,
                   -rg2 * block * trace_right.terms[t].second);
      } else {
        add_skew(zeta_base + j, q_col(node), -rg2 * block);
      }
    };

    for (int j = 0; j <= n; ++j) {
      if (j < kZoneRows) {
        // left end: the mirrored closure block (derivative flips sign)
        add_pair(j, 0, -kTrace[j]);
        for (int s = 0; s < kStencil; ++s) add_pair(j, 1 + s, -kRows[j][s]);
      } else if (n - j < kZoneRows) {
        const int r = n - j;
        add_pair(j, n, kTrace[r]);
        for (int s = 0; s < kStencil; ++s) add_pair(j, n - 1 - s, kRows[r][s]);
      } else {
        add_pair(j, j - 1, -0.5);
        add_pair(j, j + 1, 0.5);
      }
    }
  };

  NodeDesc wall;
  NodeDesc iface_minus, iface_plus; // q(-l) = c + l eta, q(l) = c - l eta
  iface_minus.add(ic_, 1.0);
  iface_minus.add(ie_, g.l());
  iface_plus.add(ic_, 1.0);
  iface_plus.add(ie_, -g.l());

  const int nm = g.n_minus();
  assemble_component(0, nm, g.h_minus(), [&](int i) { return nz + (i - 1); }, wall,
                     iface_minus);
  assemble_component(nm + 1, g.n_plus(), g.h_plus(),
                     [&](int i) { return nz + (nm - 1) + (i - 1); }, iface_plus, wall);

  mt.emplace_back(ic_, ic_, cfg_.rho * cfg_.l * cfg_.alpha_bar);
  mt.emplace_back(id_, id_, cfg_.rho * cfg_.g * cfg_.l);
  mt.emplace_back(ie_, ie_, 0.5 * cfg_.M_bar);
  add_skew(id_, ie_, cfg_.rho * cfg_.g * cfg_.l);

  mass_.resize(dim_, dim_);
  mass_.setFromTriplets(mt.begin(), mt.end());
  mass_diag_ = mass_.diagonal();

  std::vector<Eigen::Triplet<double>> st;
  st.reserve(2 * skew_upper.size());
  for (const auto& [key, v] : skew_upper) {
    st.emplace_back(key.first, key.second, v);
    st.emplace_back(key.second, key.first, -v);
  }
  skew_.resize(dim_, dim_);
  skew_.setFromTriplets(st.begin(), st.end());

  rho_b_ = Eigen::VectorXd::Zero(dim_);
  rho_b_[ie_] = 0.5;
}

Eigen::VectorXd DiscreteGenerator::pack(const State& z) const {
  if (!z.grid || !z.grid->same_as(*grid_)) throw std::invalid_argument("pack: grid mismatch");
  Eigen::VectorXd v(dim_);
  v.head(z.zeta.size()) = z.zeta;
  v.segment(z.zeta.size(), z.q.size()) = z.q;
  v[ic_] = z.qi_avg;
  v[id_] = z.delta;
  v[ie_] = z.eta;
  return v;
}

State DiscreteGenerator::unpack(const Eigen::VectorXd& v) const {
  State z = State::zero(grid_);
  z.zeta = v.head(z.zeta.size());
  z.q = v.segment(z.zeta.size(), z.q.size());
  z.qi_avg = v[ic_];
  z.delta = v[id_];
  z.eta = v[ie_];
  return z;
}

State DiscreteGenerator::apply(const State& z) const {
  return unpack(mass_solve(skew_ * pack(z)));
}

State DiscreteGenerator::control_state() const {
  return unpack(mass_solve(rho_b_));
}

Eigen::VectorXd DiscreteGenerator::mass_solve(const Eigen::VectorXd& rhs) const {
  return rhs.cwiseQuotient(mass_diag_); // the grid inner product is diagonal
}

MidpointStepper::MidpointStepper(std::shared_ptr<const DiscreteGenerator> gen, double dt,
                                 bool closed_loop)
    : gen_(std::move(gen)), dt_(dt), closed_loop_(closed_loop) {
  if (!(dt > 0)) throw std::invalid_argument("step: dt must be positive");
  Eigen::SparseMatrix<double> C = gen_->skew();
  if (closed_loop_) {
    Eigen::SparseMatrix<double> bb(gen_->dim(), gen_->dim());
    std::vector<Eigen::Triplet<double>> t{{gen_->ie_, gen_->ie_, 0.25}};
    bb.setFromTriplets(t.begin(), t.end());
    C = C - bb;
  }
  forward_ = gen_->mass() + (0.5 * dt_) * C;
  Eigen::SparseMatrix<double> backward = gen_->mass() - (0.5 * dt_) * C;
  backward_lu_.compute(backward);
  if (backward_lu_.info() != Eigen::Success)
    throw NumericalError("midpoint step factorization failed (singular solve)");
}

Eigen::VectorXd MidpointStepper::step_packed(const Eigen::VectorXd& z, double u_mid) const {
  Eigen::VectorXd rhs = forward_ * z;
  if (u_mid != 0.0) rhs += dt_ * u_mid * gen_->control_functional();
  return backward_lu_.solve(rhs);
}

State MidpointStepper::step(const State& z, double u_n, double u_np1) const {
  const double u_mid = closed_loop_ ? 0.0 : 0.5 * (u_n + u_np1);
  return gen_->unpack(step_packed(gen_->pack(z), u_mid));
}

} // namespace floatctl
