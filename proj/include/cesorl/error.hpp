#pragma once

#include <stdexcept>
#include <string>

namespace cesorl {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters or an object that violates the Orlicz/step-function axioms.
class ConstructionError : public Error {
public:
  using Error::Error;
};

/// Argument outside the domain of an operation (t <= 0, s <= 0, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Numerics could neither converge nor certify divergence.
class IndeterminateError : public Error {
public:
  using Error::Error;
};

/// A sampled verdict disagrees with what the function object declares about itself.
class DiagnosticError : public Error {
public:
  using Error::Error;
};

/// An operation was called without its precondition holding.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Malformed configuration or report text.
class ParseError : public Error {
public:
  using Error::Error;
};

} // namespace cesorl
