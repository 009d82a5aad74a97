#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "itl/parser.hpp"
#include "itl/semantics.hpp"

namespace itl {

// A specification: variable declarations, optional bound settings, and one
// formula over the declared variables.
//
//   # counter
//   var A : int
//   var B : int
//   option int-domain 0..8
//   option max-len 6
//   A=0 and A gets A+1 and box(B = A*2) and len(4)
struct SpecFile {
  Universe vars;
  FormulaPtr formula;
  std::optional<std::pair<std::int64_t, std::int64_t>> int_domain;
  std::optional<unsigned> max_len;
  std::optional<std::int64_t> default_int;
};

SpecFile load_spec_file(const std::string& path);
SpecFile parse_spec_text(const std::string& text, const std::string& origin);

// Serialised intervals. Text form is one state per line:
//   0: A=0 B=0
// Structured form is one JSON object per line:
//   {"A": 0, "B": 0}
std::string trace_to_text(const Interval& in, const std::vector<VarName>& order);
std::string trace_to_json_lines(const Interval& in, const std::vector<VarName>& order);

// Accepts either serialisation; sorts follow the declarations.
Interval parse_trace(const std::string& text, const Universe& vars);
Interval load_trace_file(const std::string& path, const Universe& vars);

}  // namespace itl
