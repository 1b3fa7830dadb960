#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tlg {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, std::size_t position)
      : Error(msg + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UnknownAtomError : public Error {
 public:
  using Error::Error;
};

class UnknownWordError : public Error {
 public:
  explicit UnknownWordError(const std::string& word)
      : Error("unknown word '" + word + "'"), word_(word) {}
  const std::string& word() const { return word_; }

 private:
  std::string word_;
};

class LexiconError : public Error {
 public:
  using Error::Error;
};

class ModelError : public Error {
 public:
  using Error::Error;
};

class DiagramError : public Error {
 public:
  using Error::Error;
};

/// Raised when a carrier or contraction exceeds the configured element budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace tlg
