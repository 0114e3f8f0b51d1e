#pragma once

#include <stdexcept>
#include <string>

namespace intertwine {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Two surds with different radicands met in one computation.
class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// ℓ = −h∨ was supplied where a non-critical level is required.
class CriticalLevel : public Error {
 public:
  using Error::Error;
};

/// An action left the materialized window of an infinite-dimensional module.
class WindowEscape : public Error {
 public:
  using Error::Error;
};

/// A result would exceed the degree cutoff of a truncated module.
class CutoffExceeded : public Error {
 public:
  using Error::Error;
};

class UnsupportedShape : public Error {
 public:
  using Error::Error;
};

/// The window is too small for the intertwining equations to pin down the map.
class UnderdeterminedWindow : public Error {
 public:
  using Error::Error;
};

}  // namespace intertwine
