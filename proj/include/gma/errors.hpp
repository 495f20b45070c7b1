#pragma once

#include <stdexcept>
#include <string>

namespace gma {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: dimension mismatch, non-Hermitian where Hermitian is
/// required, schema violations.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// A hypothesis of an operation does not hold (e.g. vector not cyclic).
class PreconditionError : public Error {
public:
  using Error::Error;
};

class NotPositiveError : public Error {
public:
  using Error::Error;
};

class SingularityError : public Error {
public:
  using Error::Error;
};

/// Numerically unreliable input, e.g. a modular operator with eigenvalues
/// below the clamp floor.
class IllConditionedError : public Error {
public:
  using Error::Error;
};

/// An iterative construction exceeded its hard bound.
class DefectError : public Error {
public:
  using Error::Error;
};

class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

private:
  double achieved_;
};

class EnumerationCapError : public Error {
public:
  using Error::Error;
};

} // namespace gma
