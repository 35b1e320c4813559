#pragma once

#include <stdexcept>
#include <string>

namespace qks {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (|rho| >= 1, point off support, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The operation is undefined in the requested q regime (e.g. an infinite product at q = 1).
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// A series or product did not reach its tolerance within the allowed number of terms.
class NonConvergent : public Error {
 public:
  using Error::Error;
};

class DivisionByNearZero : public Error {
 public:
  using Error::Error;
};

class ParamError : public Error {
 public:
  using Error::Error;
};

class DegreeCap : public Error {
 public:
  using Error::Error;
};

/// Correlation triple whose matrix determinant is negative.
class InfeasibleCorrelation : public Error {
 public:
  InfeasibleCorrelation(const std::string& what, double delta)
      : Error(what), delta_(delta) {}
  double delta() const noexcept { return delta_; }

 private:
  double delta_;
};

}  // namespace qks
