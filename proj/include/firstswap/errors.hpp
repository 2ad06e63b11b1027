#pragma once

#include <stdexcept>

namespace firstswap {

/// An argument lies outside an operation's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A request exceeds a hard size cap (e.g. exhaustive enumeration).
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace firstswap
