#pragma once

#include <stdexcept>
#include <string>

namespace mzm {

// Thrown for malformed configs, bad operator text, and contract violations
// reachable from user input. Maps to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure: projection annihilation, non-convergence. Exit code 3.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// A verification pass found a mismatch. Exit code 4.
struct VerifyError : std::runtime_error {
  explicit VerifyError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mzm
