#pragma once

#include <stdexcept>
#include <string>

namespace kdspin {

// Base for anything the CLI maps to "physics error" (exit code 3).
struct PhysicsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// On-shell intermediate state: an energy denominator vanished.
struct SingularKinematics : PhysicsError {
  using PhysicsError::PhysicsError;
};

// A stated precondition (Bragg condition, on-shell flag, ...) is violated.
struct PreconditionError : PhysicsError {
  using PhysicsError::PhysicsError;
};

// Requested tensor component outside the implemented range.
struct UnsupportedComponent : PhysicsError {
  using PhysicsError::PhysicsError;
};

// Integrator diagnostics (norm drift beyond the abort threshold).
struct IntegrationError : PhysicsError {
  using PhysicsError::PhysicsError;
};

}  // namespace kdspin
