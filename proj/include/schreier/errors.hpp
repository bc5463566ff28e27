#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace schreier {

/// Literal could not be parsed; `position` is the byte offset of the offender.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// A configured size/enumeration bound would be exceeded.
class BoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation whose precondition is membership was handed a non-member.
class NotAMember : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace schreier
