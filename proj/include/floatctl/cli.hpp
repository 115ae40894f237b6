#pragma once

#include <string>
#include <vector>

namespace floatctl {

/// Batch front-end. argv-style entry point (without the program name):
/// subcommands {spectrum, modes, simulate, steer, stabilize, check}.
/// Returns 0 on success, 2 on configuration/usage errors, 3 on numerical
/// failure; failures also emit a machine-readable error JSON on stderr.
int run_cli(const std::vector<std::string>& args);

} // namespace floatctl
