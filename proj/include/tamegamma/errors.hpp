#pragma once

#include <stdexcept>
#include <string>

namespace tame {

// Bad input: unsupported prime, invalid field data, non-admissible pair, ...
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The working p-adic precision ran out before a result could be certified.
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tame
