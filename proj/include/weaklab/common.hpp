#pragma once

#include <stdexcept>
#include <string>

namespace weaklab {

/// Work-guard violation (grid too large for the requested operator).
class guard_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Evaluation budget exceeded (sweeps and searches).
class budget_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent run configuration.
class config_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace weaklab
