#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace subuniv {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed automaton file or regular expression. Positions are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A word or literal uses a symbol that is not part of the alphabet.
class AlphabetError : public Error {
 public:
  using Error::Error;
};

/// Structurally invalid automaton (bad state ids, several initial states, ...).
class AutomatonError : public Error {
 public:
  using Error::Error;
};

/// The operation is only defined for deterministic automata.
class NondeterministicError : public Error {
 public:
  using Error::Error;
};

/// A configured resource cap (alphabet size, state budget, memory) was exceeded.
class LimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace subuniv
