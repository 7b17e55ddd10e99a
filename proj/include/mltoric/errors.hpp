#pragma once

#include <stdexcept>
#include <string>

namespace mltoric {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Vectors or matrices of incompatible length.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// An argument outside the operation's domain (zero vector, foreign face, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Input the algorithms cannot handle, e.g. a grading that is not positive
// on every generator.
class UnsupportedInput : public Error {
 public:
  using Error::Error;
};

// The monoid has nonzero units, so its cone is not pointed.
class UnsupportedMonoid : public Error {
 public:
  using Error::Error;
};

// A derivation maps a monomial of the algebra outside the algebra.
class ClosureError : public Error {
 public:
  ClosureError(const std::string& what, std::string monomial)
      : Error(what), monomial_(std::move(monomial)) {}
  const std::string& monomial() const noexcept { return monomial_; }

 private:
  std::string monomial_;
};

// Malformed user input (JSON document, command-line values).
class InputError : public Error {
 public:
  using Error::Error;
};

// A self-check failed. Seeing this means a bug or a counterexample.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace mltoric
