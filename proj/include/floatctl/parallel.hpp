#pragma once

#include <functional>

namespace floatctl {

/// Hardware concurrency capped by the FLOATCTL_THREADS environment variable.
int max_threads();

/// Runs fn(i) for i in [0, n) on up to max_threads() workers. Results must be
/// written to caller-owned slots indexed by i so output stays deterministic.
void parallel_for(int n, const std::function<void(int)>& fn);

} // namespace floatctl
