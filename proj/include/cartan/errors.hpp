#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cartan {

/// Base class of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An equation is not linear in the unknowns, or has a parametric pivot.
class NonLinear : public Error {
 public:
  using Error::Error;
};

/// A system of equations reduces to a nonzero constraint with no unknowns.
class Inconsistent : public Error {
 public:
  using Error::Error;
};

class DegreeError : public Error {
 public:
  using Error::Error;
};

class MixedDegree : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class MissingDeclaration : public Error {
 public:
  using Error::Error;
};

class Redeclaration : public Error {
 public:
  using Error::Error;
};

class NotInSpan : public Error {
 public:
  using Error::Error;
};

class UnsupportedKind : public Error {
 public:
  using Error::Error;
};

/// The ideal of an exterior differential system is not linear in the fibre forms.
class NotLinear : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input. `position` is a 0-based character offset into
/// the parsed text; `line` is 1-based and 0 when not known.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& reason, std::size_t line = 0)
      : Error(format(position, reason, line)), position_(position), line_(line), reason_(reason) {}

  std::size_t position() const noexcept { return position_; }
  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

  /// Same error, tagged with the line it came from.
  ParseError at_line(std::size_t line) const { return ParseError(position_, reason_, line); }

 private:
  static std::string format(std::size_t position, const std::string& reason, std::size_t line) {
    std::string out = "parse error";
    if (line != 0) out += " at line " + std::to_string(line);
    out += " at position " + std::to_string(position) + ": " + reason;
    return out;
  }

  std::size_t position_;
  std::size_t line_;
  std::string reason_;
};

}  // namespace cartan
