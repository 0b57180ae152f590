#pragma once

#include <stdexcept>
#include <string>

namespace raz {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain where the operation is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The construction exists in principle but does not apply to these
/// parameters (e.g. an escaping initial function below its threshold).
class NotApplicableError : public Error {
 public:
  using Error::Error;
};

/// A closed form was requested outside the branch where it is valid.
class BranchError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A root finder or optimiser failed to bracket or converge.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace raz
