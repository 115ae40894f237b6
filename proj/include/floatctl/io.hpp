#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "floatctl/control_signal.hpp"
#include "floatctl/spectral.hpp"
#include "floatctl/state.hpp"

namespace floatctl {

inline constexpr const char* kToolVersion = "0.1.0";

/// Shortest-deterministic float formatting used by every CSV writer:
/// 17 significant digits, so identical inputs give byte-identical output.
std::string format_double(double v);

struct LoadedConfig {
  PhysicalConfig physical;
  int cells = 200;
  std::string source_path;
  std::uint64_t hash = 0; // FNV-1a of the file bytes
};

/// key = value sections: [fluid] g, rho, h0; [geometry] l, L, Lp;
/// [object] h_eq = flat:<v> | samples:<csv path>; [grid] cells.
LoadedConfig load_config_file(const std::string& path);

std::uint64_t fnv1a(const std::string& bytes);

void write_state_csv(const std::string& path, const State& z);
State read_state_csv(const std::string& path);

std::string state_to_json(const State& z);
State state_from_json(const std::string& text);

void write_control_csv(const std::string& path, const ControlSignal& u);
ControlSignal read_control_csv(const std::string& path);

void write_spectrum_csv(const std::string& path, const SpectrumReport& rep,
                        const PhysicalConfig& cfg, const std::vector<double>& residuals);
std::string spectrum_report_to_json(const SpectrumReport& rep, const PhysicalConfig& cfg);

struct RunManifest {
  std::uint64_t config_hash = 0;
  std::string subcommand;
  std::map<std::string, std::string> parameters;
  std::vector<std::string> outputs;
  std::string tool_version = kToolVersion;
  double wall_clock_seconds = 0.0;
};

void write_manifest(const std::string& path, const RunManifest& m);

} // namespace floatctl
