#pragma once

#include <stdexcept>
#include <string>

namespace sburgers {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The grid is too small for the requested stencil.
class SizingError : public Error {
 public:
  using Error::Error;
};

/// Two operands live on different lattices.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A denominator or a linear system is singular at some lattice point.
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Invalid grid, scheme or scenario parameters.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// The discrete evolution lost positivity, finiteness or stability.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// A semimartingale decomposition part required by a check is absent.
class MissingParts : public Error {
 public:
  using Error::Error;
};

}  // namespace sburgers
