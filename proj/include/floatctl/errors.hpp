#pragma once

#include <stdexcept>
#include <string>

namespace floatctl {

/// Invalid geometry, fluid constants, or malformed configuration input.
class ConfigError : public std::invalid_argument {
public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// Runtime numerical failure: bracket exhaustion, CFL violation, touchdown,
/// drying, shock onset, singular solve.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace floatctl
