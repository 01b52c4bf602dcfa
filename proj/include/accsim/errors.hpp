#pragma once

#include <stdexcept>
#include <string>

namespace accsim {

/// Rejected configuration file or command-line input.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The flux position measure has zero normalizing constant (rho = 0 or 1).
class ZeroFluxError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Both components of the position mixture are degenerate.
class DegenerateStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Jump kernel invoked with no accident mass and no resolution mass.
class NoEventError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The rate function exceeded the dominating bound of the thinning sampler.
class BoundViolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Statistics routine called on an empty sample set.
class EmptySampleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Internal invariants broken (corrupted state, non-positive capacity, ...).
class InvalidStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace accsim
