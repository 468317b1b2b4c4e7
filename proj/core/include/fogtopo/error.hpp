#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fogtopo {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised by the file-format parsers. Carries the 1-based line number of the
/// offending record when one is known (0 otherwise).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, std::size_t line_number = 0)
      : Error(line_number > 0 ? "line " + std::to_string(line_number) + ": " + what : what),
        line_number_(line_number) {}

  std::size_t line_number() const { return line_number_; }

 private:
  std::size_t line_number_;
};

}  // namespace fogtopo
