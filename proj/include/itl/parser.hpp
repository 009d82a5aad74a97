#pragma once

#include <map>
#include <string>

#include "itl/ast.hpp"

namespace itl {

// Known variable sorts. With infer_sorts set, undeclared names pick up their
// sort from use (integer context, boolean context); names never constrained
// default to int. Without it, undeclared names are parse errors.
struct SymbolTable {
  std::map<std::string, Sort> sorts;
  bool infer_sorts = true;
};

// Throws ParseError. Updates table with inferred sorts.
FormulaPtr parse_formula(const std::string& text, SymbolTable& table);
FormulaPtr parse_formula(const std::string& text);

ExprPtr parse_expr(const std::string& text, SymbolTable& table);

// Concrete syntax, minimally parenthesised; parse_formula(print(f)) == f for
// every parser-producible formula.
std::string print(const Formula& f);
std::string print(const Expr& e);
inline std::string print(const FormulaPtr& f) { return print(*f); }
inline std::string print(const ExprPtr& e) { return print(*e); }

// Constructor tree, one node per line, for diagnostics.
std::string ast_dump(const Formula& f);

}  // namespace itl
