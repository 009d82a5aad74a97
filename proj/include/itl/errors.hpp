#pragma once

#include <stdexcept>
#include <string>

namespace itl {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Raised by expression/formula evaluation.
struct EvalError : Error {
  enum class Kind {
    DivisionByZero,
    Overflow,
    UnknownVariable,
    UnknownOperator,
    SortMismatch,
  };
  Kind kind;
  EvalError(Kind k, const std::string& what) : Error(what), kind(k) {}
};

// Raised on malformed concrete syntax; positions are 1-based.
struct ParseError : Error {
  int line;
  int col;
  ParseError(int line_, int col_, const std::string& what)
      : Error("line " + std::to_string(line_) + ", col " + std::to_string(col_) + ": " + what),
        line(line_),
        col(col_) {}
};

struct IndexError : Error {
  explicit IndexError(const std::string& what) : Error(what) {}
};

// Raised by single-step reduction when a formula leaves the executable
// fragment or its immediate constraints are unsatisfiable.
struct EngineError : Error {
  enum class Kind { NotExecutable, Contradiction };
  Kind kind;
  EngineError(Kind k, const std::string& what) : Error(what), kind(k) {}
};

}  // namespace itl
