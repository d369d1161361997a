#pragma once

#include <stdexcept>
#include <string>

namespace npspace {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix or coordinate vector has the wrong shape.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Basis matrices of an operator space are (numerically) linearly dependent.
class DependentBasis : public Error {
 public:
  using Error::Error;
};

/// A map's matrix-level action does not land in the declared codomain.
class InconsistentAction : public Error {
 public:
  using Error::Error;
};

/// An element or map was combined with an incompatible space.
class SpaceMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidLevel : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// The requested truncation level exceeds what the level table certifies.
class InsufficientTable : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class NoClosedForm : public Error {
 public:
  using Error::Error;
};

/// Malformed space/map/sequence input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A computed bracket contradicts a certified bound (lo > hi beyond rounding).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace npspace
