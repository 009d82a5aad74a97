#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace itl {

enum class Sort { Int, Bool };

inline const char* sort_name(Sort s) { return s == Sort::Int ? "int" : "bool"; }

// A declared variable: identifier plus its fixed sort.
struct VarName {
  std::string name;
  Sort sort = Sort::Int;

  auto operator<=>(const VarName&) const = default;
  bool operator==(const VarName&) const = default;
};

bool valid_identifier(const std::string& name);

VarName int_var(std::string name);
VarName bool_var(std::string name);

// Scalar carried by states: a tagged integer-or-boolean.
struct Value {
  Sort sort = Sort::Int;
  std::int64_t num = 0;  // holds 0/1 for Bool

  static Value of_int(std::int64_t v) { return Value{Sort::Int, v}; }
  static Value of_bool(bool v) { return Value{Sort::Bool, v ? 1 : 0}; }

  std::int64_t as_int() const { return num; }
  bool as_bool() const { return num != 0; }

  bool operator==(const Value&) const = default;
  auto operator<=>(const Value&) const = default;
};

std::string to_string(const Value& v);

}  // namespace itl
