#pragma once

#include <stdexcept>
#include <string>

namespace veco {

// Malformed input text (bad edge list line, bad partition file line).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structurally valid input that violates a semantic contract
// (isolated vertices in strict mode, carrier mismatch, uncovered plan).
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid parameter combination (tau out of range, infeasible generator config).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace veco
