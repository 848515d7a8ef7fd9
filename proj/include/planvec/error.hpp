#pragma once

#include <stdexcept>
#include <string>

namespace planvec {

// Unreadable or undecodable input data (bad magic, truncated file,
// unsupported encoding, malformed SVG).  CLI maps this to exit code 2.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid or infeasible configuration (generator that cannot fit the
// requested rooms, nonsensical pipeline parameters from a config source).
// CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Image too small for the requested window/operator.
struct TooSmallError : ConfigError {
  using ConfigError::ConfigError;
};

// Candidate enumeration blew past the hard cap; the grid is too dense to
// fit walls in reasonable time.  CLI maps this to exit code 3.
struct TooDenseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-finite values or a division by zero in the guidance math.
// CLI maps this to exit code 4.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace planvec
