#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace morphfreq {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : what + " at line " + std::to_string(line)),
        line_(line) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ErasingRule : public ParseError {
 public:
  ErasingRule(const std::string& letter, std::size_t line)
      : ParseError("ErasingRule: letter '" + letter + "' has an empty image",
                   line),
        letter_(letter) {}

  [[nodiscard]] const std::string& letter() const noexcept { return letter_; }

 private:
  std::string letter_;
};

class UnknownLetter : public ParseError {
 public:
  explicit UnknownLetter(const std::string& token, std::size_t line = 0)
      : ParseError("UnknownLetter '" + token + "'", line), token_(token) {}

  [[nodiscard]] const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

class MissingRule : public ParseError {
 public:
  explicit MissingRule(const std::string& letter)
      : ParseError("MissingRule: no rule for letter '" + letter + "'", 0) {}
};

class DuplicateRule : public ParseError {
 public:
  DuplicateRule(const std::string& letter, std::size_t line)
      : ParseError("DuplicateRule: second rule for letter '" + letter + "'",
                   line) {}
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NotProlongable : public Error {
 public:
  explicit NotProlongable(const std::string& letter)
      : Error("NotProlongable: the image of '" + letter +
              "' does not start with it or has length 1") {}
};

/// The unbounded letters carry no frequency mass, so C_{v,M} is 0/0.
class DegenerateSupport : public Error {
 public:
  DegenerateSupport()
      : Error("DegenerateSupport: unbounded letters have zero total frequency") {}
};

/// The bounded mass reaches 1, so the error bound divides by zero.
class DegenerateAlpha : public Error {
 public:
  DegenerateAlpha()
      : Error("DegenerateAlpha: bounded-letter mass interval reaches 1") {}
};

class BigIntCapExceeded : public Error {
 public:
  BigIntCapExceeded(const std::string& what, std::size_t bits, std::size_t cap)
      : Error("big-integer cap exceeded in " + what + ": " +
              std::to_string(bits) + " bits > " + std::to_string(cap) +
              " (raise MORPHFREQ_MAX_BIGINT_BITS)") {}
};

}  // namespace morphfreq
