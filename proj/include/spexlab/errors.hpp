#ifndef SPEXLAB_ERRORS_HPP
#define SPEXLAB_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spexlab {

/// Base of every exception the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed graph file. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input too large for an exhaustive or dense computation.
class CapacityError : public Error {
 public:
  using Error::Error;
};

}  // namespace spexlab

#endif  // SPEXLAB_ERRORS_HPP
