#pragma once

#include <stdexcept>
#include <string>

namespace wiretwist {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Section or ring parameters violate a geometric invariant.
class InvalidGeometry : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain where a formula is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

class WrongSectionKind : public Error {
 public:
  using Error::Error;
};

class DegenerateFit : public Error {
 public:
  using Error::Error;
};

/// Adaptive refinement hit its cap. Carries the best estimate reached.
class QuadratureNotConverged : public Error {
 public:
  QuadratureNotConverged(const std::string& what, double estimate, double error_bound)
      : Error(what + " (estimate " + std::to_string(estimate) + ", error bound " +
              std::to_string(error_bound) + ")"),
        estimate_(estimate),
        error_bound_(error_bound) {}

  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

}  // namespace wiretwist
