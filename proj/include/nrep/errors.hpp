#pragma once

#include <stdexcept>
#include <string>

namespace nrep {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: bad orbital sets, shape mismatches, unsorted spectra.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// C(r, n) exceeds the configured cap, or n > r.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input violates a numerical precondition (non-Hermitian, non-unitary, unnormalized).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A canonical form would require choosing a basis inside a degenerate eigenspace.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

/// A constructor was asked for a pre-image of a spectrum that has none.
class NotRepresentable : public Error {
 public:
  using Error::Error;
};

/// Observed structure contradicts a proven theorem; almost certainly a bug.
class AnomalyError : public Error {
 public:
  using Error::Error;
};

}  // namespace nrep
