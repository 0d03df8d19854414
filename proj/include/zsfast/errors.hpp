#pragma once

#include <stdexcept>
#include <string>

namespace zsfast {

// Root of the library's exception hierarchy. Each subclass names one failure
// class from the public contracts; the CLI maps them onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GridError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

class SizeError : public Error {
 public:
  using Error::Error;
};

class CatalogError : public Error {
 public:
  using Error::Error;
};

// Θ or Δ vanished (or came within rounding of zero) at some step.
class StepSizeError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

class MultipleRootError : public Error {
 public:
  using Error::Error;
};

class DegreeCapError : public Error {
 public:
  using Error::Error;
};

}  // namespace zsfast
