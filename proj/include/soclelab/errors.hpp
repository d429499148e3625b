#pragma once

#include <stdexcept>
#include <string>

namespace soclelab {

/// Malformed or out-of-contract input (bad table, non-prime modulus, ...).
class invalid_input : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input that is well-formed but outside what an operation supports.
class unsupported_input : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structural claim that must hold failed on a concrete group.
/// Raised only by the theorem checks; it means either the implementation
/// or the reading of the underlying result is wrong.
class consistency_failure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require_consistent(bool ok, const std::string& what) {
  if (!ok) throw consistency_failure(what);
}

}  // namespace soclelab
