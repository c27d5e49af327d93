#pragma once

#include <stdexcept>
#include <string>

namespace sylvan {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
  explicit DivisionByZero(const std::string& what) : Error(what) {}
};

// Raised with a 0-based character offset into the parsed text.
class ParseError : public InvalidInput {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InvalidInput(what + " at offset " + std::to_string(position)), message_(what), position_(position) {}

  std::size_t position() const noexcept { return position_; }
  // The message without the offset suffix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::size_t position_;
};

class EvaluationFailure : public Error {
 public:
  using Error::Error;
};

class TilingTooCoarse : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace sylvan
