#pragma once

#include <optional>

#include "itl/ast.hpp"
#include "itl/interval.hpp"

namespace itl {

// Shared settings for evaluation and bounded checks. The domain feeds both
// the interval enumeration and the range of Exists; the defaults resolve
// next/prev reads on intervals too short to contain them.
struct EvalConfig {
  Domain domain;
  std::int64_t default_int = 0;
  bool default_bool = false;

  Value default_value(Sort s) const {
    return s == Sort::Int ? Value::of_int(default_int) : Value::of_bool(default_bool);
  }
};

Value eval_expr(const Expr& e, const Interval& in, const EvalConfig& cfg);
bool eval_formula(const Formula& f, const Interval& in, const EvalConfig& cfg);

inline Value eval_expr(const ExprPtr& e, const Interval& in, const EvalConfig& cfg) {
  return eval_expr(*e, in, cfg);
}
inline bool eval_formula(const FormulaPtr& f, const Interval& in, const EvalConfig& cfg) {
  return eval_formula(*f, in, cfg);
}

// First satisfying interval in enumeration order, if any.
std::optional<Interval> satisfiable_bounded(const FormulaPtr& f, const Domain& d,
                                            const EvalConfig& cfg);

struct ValidityResult {
  bool valid = false;
  std::optional<Interval> counterexample;
};

ValidityResult valid_bounded(const FormulaPtr& f, const Domain& d, const EvalConfig& cfg);

// Bounded equivalence: no interval distinguishes a and b.
ValidityResult equivalent_bounded(const FormulaPtr& a, const FormulaPtr& b, const Domain& d,
                                  const EvalConfig& cfg);

}  // namespace itl
