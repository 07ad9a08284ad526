#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace boltzsym {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A state component became non-finite or exceeded the blow-up threshold.
class BlowUpError : public Error {
 public:
  BlowUpError(double time, double magnitude);
  double time() const noexcept { return time_; }
  double magnitude() const noexcept { return magnitude_; }

 private:
  double time_;
  double magnitude_;
};

/// The source is undefined at the requested time (e.g. t = 0 for t^-2 families).
class SingularSourceError : public Error {
 public:
  SingularSourceError(const std::string& family, double time);
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// The source family has no power-series form in x at this time / parameter.
class NotSeriesRepresentableError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a representation or transform.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Quadratic / constant equation has no real root.
class NoRealSolutionError : public Error {
 public:
  using Error::Error;
};

/// A bracket fell outside the span of the basis.
class AlgebraClosureError : public Error {
 public:
  using Error::Error;
};

/// A(n) vanished while the right side of the recursion did not.
class InconsistentResonanceError : public Error {
 public:
  InconsistentResonanceError(std::size_t index, double rhs);
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// mu * r0 != g0 at order zero.
class InconsistentInitialValueError : public Error {
 public:
  using Error::Error;
};

/// A sampled function does not decay to the required level before the grid end.
class InsufficientDecayError : public Error {
 public:
  using Error::Error;
};

}  // namespace boltzsym
