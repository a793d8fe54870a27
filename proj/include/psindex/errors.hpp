#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace psindex {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user input or violated precondition.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Expression syntax error or unknown identifier, with a 0-based offset into the text.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position, std::string expected = {})
      : InputError(what + " at position " + std::to_string(position) +
                   (expected.empty() ? std::string{} : ", expected " + expected)),
        position_(position),
        expected_(std::move(expected)) {}

  std::size_t position() const { return position_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

/// Evaluation outside the set where a defining function is smooth (e.g. w = 0 for the worm).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A computed quantity failed an internal consistency check.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace psindex
