#pragma once
#include <stdexcept>

namespace cws {

/// Precondition / physics-parameter violations. The CLI maps these to exit code 2.
class validation_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Runtime numerical failures (singular configurations, integrator breakdown,
/// eigensolver trouble). The CLI maps these to exit code 3.
class numerical_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace cws
