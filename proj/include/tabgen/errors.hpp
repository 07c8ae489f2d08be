#pragma once

#include <stdexcept>
#include <string>

namespace tabgen {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input text that could not be parsed; offset is a 0-based position into
// the offending string.
struct ParseError : Error {
  ParseError(std::string msg, std::size_t off)
      : Error(msg + " (at offset " + std::to_string(off) + ")"),
        raw(std::move(msg)),
        offset(off) {}
  std::string raw;
  std::size_t offset;
};

// A structurally well-formed document that breaks a semantic constraint
// (bad truth table, colliding separators, designated set covering all
// values, and so on).
struct SpecError : Error {
  using Error::Error;
};

// The analyticity contract was breached: a rule application produced a
// daughter whose complexity does not drop below the head's. Signals an
// unsound separator set or a calculus bug, never silent looping.
struct DescentError : Error {
  using Error::Error;
};

// Internal consistency failure; indicates a bug rather than a user error.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace tabgen
