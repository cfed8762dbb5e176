#pragma once

#include <stdexcept>
#include <string>

namespace secsim {

/// Raised when a scenario file or programmatic configuration violates a
/// contract (unknown key, out-of-range value, missing block). The message
/// names the offending key or constraint.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a stochastic estimate cannot be produced (for example an empty
/// point process across every trial).
class EstimationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace secsim
