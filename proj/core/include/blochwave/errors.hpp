#pragma once

#include <stdexcept>
#include <string>

namespace blochwave {

// Invalid inputs, missing parameters, malformed configuration.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Failures of a numerical procedure (step underflow, non-convergence).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace blochwave
