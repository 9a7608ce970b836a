#pragma once

#include <stdexcept>
#include <string>

namespace dkg {

/// Invalid parameters, data, or configuration. Maps to CLI exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure such as quadrature nonconvergence. Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dkg
