#pragma once

#include <stdexcept>
#include <string>

namespace parry {

/// A materialized word would exceed the configured length cap.
class ResourceCapError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its stated precondition
/// (e.g. a simple-Parry-only query on non-simple parameters).
class PreconditionError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// A consistency check that should be unreachable for valid inputs failed.
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace parry
