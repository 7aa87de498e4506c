#pragma once

#include <stdexcept>
#include <string>

namespace rmlab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a function (pole, branch cut, bad shape).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An adaptive routine failed to meet its error target.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// Malformed literal or parameter.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A pair (L, l0) failing one of the admissibility conditions.
class ConditionFailed : public Error {
 public:
  ConditionFailed(const std::string& which, const std::string& what)
      : Error("condition (" + which + ") failed: " + what), which_(which) {}
  const std::string& which() const noexcept { return which_; }

 private:
  std::string which_;
};

/// Two independent evaluation routes differ by more than allowed.
class RouteDisagreement : public Error {
 public:
  RouteDisagreement(const std::string& what, double gap) : Error(what), gap_(gap) {}
  double gap() const noexcept { return gap_; }

 private:
  double gap_;
};

/// Index left the truncated Hilbert space.
class TruncationOverflow : public Error {
 public:
  using Error::Error;
};

/// No algebraic number of bounded height matches.
class RecognitionFailed : public Error {
 public:
  using Error::Error;
};

/// Enumeration bound reached before the structure closed.
class BoundExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace rmlab
