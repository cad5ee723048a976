#pragma once

#include <stdexcept>
#include <string>

namespace befpp {

// Thrown when inputs violate a documented precondition (maps to exit code 2).
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown when a numerical result fails its accuracy contract (exit code 3).
struct AccuracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown on file/stream failures (exit code 4).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace befpp
