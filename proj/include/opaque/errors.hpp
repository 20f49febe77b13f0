#pragma once

#include <stdexcept>
#include <string>

namespace opaque {

// Input data (polygon, segment, scene file) rejected during validation.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Algorithm parameter outside its documented range.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A check was requested for a domain shape it does not apply to.
class DomainMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Scene data contradicts an invariant that certified scenes are guaranteed
// to satisfy (for example a blocking length below half the perimeter).
class InconsistentSceneError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation requires a certified-opaque input and the input is not.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace opaque
