#pragma once

#include <string>
#include <vector>

#include "itl/semantics.hpp"

namespace itl {

// Time reversal of expressions: first-state reads swap with last-state reads
// and next-state reads swap with previous-state reads.
ExprPtr reflect_expr(const ExprPtr& e);

// Time reversal of formulas: the result holds on an interval exactly when
// the original holds on the reversed interval. Derived constructs map to
// derived constructs, so the output stays printable in the source syntax.
FormulaPtr reflect_formula(const FormulaPtr& f);

struct ReflectionReport {
  FormulaPtr input;
  FormulaPtr output;
  std::vector<std::string> laws_applied;  // rewrite rule ids, outermost first
};

ReflectionReport reflect_formula_report(const FormulaPtr& f);

struct LawCheckResult {
  bool holds = true;
  std::optional<Interval> counterexample;
};

// Checks eval(reflect(f), s) == eval(f, reverse(s)) over every interval of d.
LawCheckResult check_reflection_law(const FormulaPtr& f, const Domain& d, const EvalConfig& cfg);

// Checks the length-forced variable identities over d:
//   on one-state intervals   fin V = V,
//   on two-state intervals   fin V = next V  and  prev V = V.
LawCheckResult check_fixed_length_var_laws(const Domain& d, const EvalConfig& cfg);

}  // namespace itl
