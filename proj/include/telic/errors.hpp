#pragma once

#include <stdexcept>

namespace telic {

/// Text did not match the number grammar or a structured file was malformed.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A value fell outside the operation's stated domain (e.g. evaluating a
/// circle map at 1, or centering a bounded target too close to an endpoint).
struct RangeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The operation is well posed but this implementation does not cover the
/// requested case (e.g. order search on a non-monotone system). Callers are
/// expected to fall back.
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An enumeration or memory budget was exceeded.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A structural precondition failed (bad table, bad program, bad instance).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace telic
