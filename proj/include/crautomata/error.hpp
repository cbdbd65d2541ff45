#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cra {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A word refers to a letter index outside the automaton's alphabet.
class InvalidWord : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented domain
/// (e.g. asking for an unreachable witness of a SUCCESS result).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// An internal precondition failed. Seeing one of these means a bug.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A brute-force routine refused to run because the instance is too large.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

/// The synchronization pipeline could not shrink the current image.
class NotSynchronizing : public Error {
 public:
  using Error::Error;
};

/// Every letter acts as a permutation, so no word has positive defect.
class NoDefect : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  enum class Kind {
    syntax,
    out_of_range_target,
    missing_row,
    duplicate_letter,
  };

  ParseError(Kind kind, std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message),
        kind_(kind),
        line_(line) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

}  // namespace cra
