#pragma once

#include <stdexcept>
#include <string>

namespace fqp {

// Base of every error raised by the toolkit. The C API maps the concrete
// subclass onto a status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates a documented invariant or precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// An enumeration would exceed the configured budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

}  // namespace fqp
