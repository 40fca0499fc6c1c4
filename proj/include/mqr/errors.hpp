#pragma once

#include <stdexcept>
#include <string>

namespace mqr {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed DSL input; carries line/column in the message.
struct ParseError : Error {
  using Error::Error;
};

/// A domain invariant failed (poset axioms, marked-quiver checks, ...).
struct ValidationError : Error {
  using Error::Error;
};

/// An enumeration bound or search-space cap was exceeded. Never a silent
/// truncation; callers map this to exit code 3.
struct ResourceLimit : Error {
  using Error::Error;
};

/// The operation's shape precondition does not hold (not a pendant arrow,
/// not reducible, not in preliminary form, ...).
struct NotApplicable : Error {
  using Error::Error;
};

}  // namespace mqr
