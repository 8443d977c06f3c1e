#pragma once

#include <stdexcept>
#include <string>

namespace rst {

// Argument outside the mathematical domain of an operation (poles, u <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed or incomplete input data.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A caller-supplied function does not satisfy the analytic hypotheses an
// algorithm relies on (e.g. a non-integrable remainder in a Mellin transform).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rst
