#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wstc {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad or inconsistent input data (corpus, theme config, annotations, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

/// A malformed record in a text file; carries the 1-based line number.
class ParseError : public DataError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : DataError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Binary embedding file violates the WSTCEMB1 layout.
class FormatError : public DataError {
 public:
  using DataError::DataError;
};

/// An engine could not produce a model (starved self-training, empty classes, ...).
class EngineError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameters or option combinations supplied by the caller.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace wstc
