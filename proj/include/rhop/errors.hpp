#pragma once

#include <stdexcept>
#include <string>

namespace rhop {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Adaptive procedure failed to stabilize within its cap.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Dense linear system was numerically singular.
class SingularSystemError : public Error {
 public:
  using Error::Error;
};

/// Contour geometry cannot satisfy the circle constraints.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Scaling function vanishes (or is non-positive) where it must not.
class WeightError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at a point where the requested quantity is infinite.
class UnboundedError : public Error {
 public:
  using Error::Error;
};

/// Configuration document failed schema validation.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace rhop
