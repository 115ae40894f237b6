#pragma once

#include <functional>
#include <vector>

namespace floatctl {

/// Sampled scalar input u(t) on a uniform time grid, interpolated piecewise
/// linearly between samples and zero outside the sampled range.
struct ControlSignal {
  double dt = 0.0;
  std::vector<double> samples; // u at t_n = n dt

  static ControlSignal zero(double dt, int n_samples);
  static ControlSignal from_function(const std::function<double(double)>& f, double dt,
                                     int n_samples);

  double operator()(double t) const;
  double duration() const { return samples.empty() ? 0.0 : dt * (samples.size() - 1); }
  bool empty() const { return samples.empty(); }
};

} // namespace floatctl
