#pragma once

#include <stdexcept>
#include <string>

namespace geolike {

/// A parameter fell outside the domain of a curve, basis or surface.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Arguments violate a documented precondition (sizes, ordering, invariants).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The surface metric is degenerate at an evaluation point.
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A tangent needed for an angle measurement vanishes.
class DegenerateTangentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No candidate produced a usable solution.
class SolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A scene file is unreadable, malformed, or names something that does not exist.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace geolike
