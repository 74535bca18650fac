#pragma once

#include <stdexcept>
#include <string>

namespace nambu {

/// Operands live in different ambient spaces (variable counts, dimensions, arities).
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// A coordinate, frame or basis index is outside its range.
class IndexError : public std::out_of_range {
 public:
  explicit IndexError(const std::string& what) : std::out_of_range(what) {}
};

/// Input has the wrong shape for the operation (degree, linearity, arity).
class ShapeError : public std::invalid_argument {
 public:
  explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

/// A documented precondition of a checker does not hold.
class PreconditionError : public std::logic_error {
 public:
  explicit PreconditionError(const std::string& what) : std::logic_error(what) {}
};

/// Hypotheses of a theorem-level routine are violated by the input family.
class HypothesisError : public std::invalid_argument {
 public:
  explicit HypothesisError(const std::string& what) : std::invalid_argument(what) {}
};

/// A theorem-level routine met an input its theorem says cannot exist.
class TheoremViolation : public std::logic_error {
 public:
  explicit TheoremViolation(const std::string& what) : std::logic_error(what) {}
};

/// Malformed literal or document; carries a location when one is known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(line == 0 ? what
                                     : what + " (line " + std::to_string(line) + ", column " +
                                           std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace nambu
