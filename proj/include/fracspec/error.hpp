#pragma once

#include <stdexcept>
#include <string>

namespace fracspec {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters or configuration (CLI exit code 3).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The grid selects no interior points.
class DegenerateGridError : public Error {
 public:
  using Error::Error;
};

/// Eigensolver failed to converge or violated its accuracy contract.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Operation is not defined for the requested input.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A fit or probe has too little data to produce a meaningful answer.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// An asserted numerical invariant failed (CLI exit code 2).
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace fracspec
