#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rfcomp {

/// A caller violated a documented precondition (bad argument, wrong method tag).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed pulse text. `position()` is the byte offset of the offending character.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// The Gram system is too close to singular to solve.
class IllConditionedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rfcomp
