#pragma once

#include <stdexcept>
#include <string>

namespace sptorsion {

/// An argument is outside an operation's mathematical domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation was refused because it exceeds a configured size cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A bounded search ran out of candidates without a hit.
class SearchExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed. Seeing one means a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace sptorsion
