#pragma once

#include <stdexcept>

namespace zonelab {

/// Malformed input file or flag value.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed object failed one of its own invariants.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace zonelab
