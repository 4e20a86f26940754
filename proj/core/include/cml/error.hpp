#pragma once

#include <stdexcept>

namespace cml {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Request exceeds a fixed table or index bound.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Caller violated a structural contract (supports, sign conditions).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cml
