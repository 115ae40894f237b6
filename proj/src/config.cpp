#include "floatctl/config.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "floatctl/errors.hpp"
#include "floatctl/quadrature.hpp"

namespace floatctl {

HeqProfile HeqProfile::flat(double value) {
  HeqProfile p;
  p.flat_ = true;
  p.value_ = value;
  return p;
}

HeqProfile HeqProfile::sampled(std::vector<double> x, std::vector<double> values) {
  if (x.size() != values.size() || x.size() < 2)
    throw ConfigError("h_eq samples: need matching x/value arrays with at least 2 points");
  std::vector<size_t> order(x.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return x[a] < x[b]; });
  HeqProfile p;
  p.flat_ = false;
  for (size_t k : order) {
    p.xs_.push_back(x[k]);
    p.vs_.push_back(values[k]);
  }

  double scale = 0.0;
  for (double v : p.vs_) scale = std::max(scale, std::abs(v));
  // symmetrize: replace each sample by the average with the mirrored value
  auto eval_raw = [&](double xx) {
    const auto& X = p.xs_;
    const auto& V = p.vs_;
    if (xx <= X.front()) return V.front();
    if (xx >= X.back()) return V.back();
    auto it = std::upper_bound(X.begin(), X.end(), xx);
    size_t i = static_cast<size_t>(it - X.begin());
    double t = (xx - X[i - 1]) / (X[i] - X[i - 1]);
    return (1 - t) * V[i - 1] + t * V[i];
  };
  double max_asym = 0.0;
  std::vector<double> sym(p.vs_.size());
  for (size_t i = 0; i < p.xs_.size(); ++i) {
    double mirrored = eval_raw(-p.xs_[i]);
    max_asym = std::max(max_asym, std::abs(p.vs_[i] - mirrored));
    sym[i] = 0.5 * (p.vs_[i] + mirrored);
  }
  if (max_asym > 1e-8 * std::max(scale, 1e-300)) {
    std::ostringstream os;
    os << "h_eq profile is not even: max asymmetry " << max_asym << " exceeds 1e-8 * " << scale;
    throw ConfigError(os.str());
  }
  p.vs_ = std::move(sym);
  return p;
}

double HeqProfile::operator()(double x) const {
  if (flat_) return value_;
  const double ax = x; // profile already symmetric; evaluate as-is
  if (ax <= xs_.front()) return vs_.front();
  if (ax >= xs_.back()) return vs_.back();
  auto it = std::upper_bound(xs_.begin(), xs_.end(), ax);
  size_t i = static_cast<size_t>(it - xs_.begin());
  double t = (ax - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
  return (1 - t) * vs_[i - 1] + t * vs_[i];
}

HeqProfile HeqProfile::parse_token(const std::string& token) {
  const std::string prefix = "flat:";
  if (token.rfind(prefix, 0) == 0) {
    try {
      return flat(std::stod(token.substr(prefix.size())));
    } catch (const std::exception&) {
      throw ConfigError("h_eq token '" + token + "': cannot parse flat value");
    }
  }
  throw ConfigError("h_eq token '" + token + "': expected flat:<value> or a sample file");
}

double PhysicalConfig::wave_speed() const { return std::sqrt(g * h0); }

PhysicalConfig build_config(double g, double rho, double h0, double l, double L, double Lp,
                            const HeqProfile& h_eq) {
  if (!(g > 0) || !(rho > 0)) throw ConfigError("g and rho must be positive");
  if (!(h0 > 0)) throw ConfigError("rest depth h0 must be positive");
  if (!(l > 0) || !(l < std::min(L, Lp)))
    throw ConfigError("geometry requires 0 < l < min(L, L')");

  // h_eq in (0, h0) on [-l, l]; check on a fine probe grid
  const int probes = 4096;
  for (int i = 0; i <= probes; ++i) {
    double x = -l + 2.0 * l * i / probes;
    double v = h_eq(x);
    if (!(v > 0)) throw ConfigError("h_eq must be positive on [-l, l]");
    if (!(v < h0)) throw ConfigError("h_eq must stay below h0 on [-l, l] (zero submerged depth)");
  }

  PhysicalConfig cfg;
  cfg.g = g;
  cfg.rho = rho;
  cfg.h0 = h0;
  cfg.l = l;
  cfg.L = L;
  cfg.Lp = Lp;
  cfg.h_eq = h_eq;

  const double qtol = 1e-10;
  auto heq = [&](double x) { return h_eq(x); };
  cfg.m = rho * trapezoid_refined([&](double x) { return h0 - heq(x); }, -l, l, qtol).value;
  cfg.alpha_bar = trapezoid_refined([&](double x) { return 1.0 / heq(x); }, -l, l, qtol).value / (2 * l);
  cfg.M_bar = cfg.m + rho * trapezoid_refined([&](double x) { return x * x / heq(x); }, -l, l, qtol).value;
  cfg.kappa = cfg.M_bar - 2.0 * rho * l * l * l * cfg.alpha_bar;
  cfg.tau0 = 2.0 * (L - l) / std::sqrt(g * h0);

  if (!(cfg.alpha_bar > 0) || !(cfg.M_bar > cfg.m) || !(cfg.m > 0))
    throw ConfigError("derived constants violate alpha_bar > 0, M_bar > m > 0");
  return cfg;
}

} // namespace floatctl
