#pragma once

#include <stdexcept>
#include <string>

namespace lowdisc {

/// A caller broke a documented precondition (wrong dimension, domain, ...).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An argument lies outside the mathematical domain of a function.
class DomainError : public ContractViolation {
 public:
  using ContractViolation::ContractViolation;
};

/// A computation produced a non-finite or inconsistent value.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A request would exceed a supported or sensible size.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace lowdisc
