#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "itl/value.hpp"

namespace itl {

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

enum class ExprKind {
  ConstInt,
  ConstBool,
  Var,      // value in the first state
  NextVar,  // value in the second state (default value on one-state intervals)
  FinVar,   // value in the last state
  PrevVar,  // value in the state before the last (default on one-state intervals)
  Apply,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Immutable. Build through the e_* factories below.
struct Expr {
  ExprKind kind;
  std::int64_t int_val = 0;           // ConstInt
  bool bool_val = false;              // ConstBool
  VarName var{"", Sort::Int};         // Var / NextVar / FinVar / PrevVar
  std::string op;                     // Apply
  std::vector<ExprPtr> args;          // Apply
};

ExprPtr e_int(std::int64_t v);
ExprPtr e_bool(bool v);
ExprPtr e_var(VarName v);
ExprPtr e_next(VarName v);
ExprPtr e_fin(VarName v);
ExprPtr e_prev(VarName v);
ExprPtr e_apply(std::string op, std::vector<ExprPtr> args);

ExprPtr e_add(ExprPtr a, ExprPtr b);
ExprPtr e_sub(ExprPtr a, ExprPtr b);
ExprPtr e_mul(ExprPtr a, ExprPtr b);
ExprPtr e_div(ExprPtr a, ExprPtr b);
ExprPtr e_mod(ExprPtr a, ExprPtr b);
ExprPtr e_eq(ExprPtr a, ExprPtr b);
ExprPtr e_lt(ExprPtr a, ExprPtr b);
ExprPtr e_le(ExprPtr a, ExprPtr b);
ExprPtr e_gt(ExprPtr a, ExprPtr b);
ExprPtr e_ge(ExprPtr a, ExprPtr b);

bool equal(const Expr& a, const Expr& b);
inline bool equal(const ExprPtr& a, const ExprPtr& b) { return equal(*a, *b); }

// Bit set describing which state positions an expression reads.
namespace reads {
constexpr unsigned kVar = 1u << 0;
constexpr unsigned kNext = 1u << 1;
constexpr unsigned kFin = 1u << 2;
constexpr unsigned kPrev = 1u << 3;
}  // namespace reads

unsigned read_mask(const Expr& e);

// ---------------------------------------------------------------------------
// Operators
// ---------------------------------------------------------------------------

// Pure n-ary operator over values. poly_eq marks the one signature-generic
// operator (equality at either sort).
struct Operator {
  std::string name;
  std::vector<Sort> params;
  Sort result = Sort::Bool;
  bool poly_eq = false;
  std::function<Value(const std::vector<Value>&)> fn;
};

const Operator* find_operator(const std::string& name);
void register_operator(Operator op);

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

enum class FormulaKind {
  // kernel
  True,
  Pred,
  Not,
  And,
  Exists,
  Skip,
  Chop,
  ChopStar,
  // derived connectives and temporal operators
  Or,
  Implies,
  Iff,
  Next,
  WNext,
  Prev,
  WPrev,
  Diamond,
  Box,
  DiamondI,
  BoxI,
  DiamondA,
  BoxA,
  Empty,
  More,
  // assignment and structuring constructs
  Assign,      // V = e        (value in the first state)
  UnitAssign,  // V := e       (next value of V)
  TempAssign,  // V <- e       (final value of V)
  PastAssign,  // V =: e       (previous value of V)
  Gets,        // V gets e     (V <- e over every unit subinterval)
  If,
  Len,
  Fin,
  Init,
  Halt,
  Keep,
  InitOnly,
  While,
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable. Build through the f_* factories below.
struct Formula {
  FormulaKind kind;
  ExprPtr expr;                    // Pred; right-hand side of assignments
  VarName var{"", Sort::Int};      // Exists; left-hand side of assignments
  std::vector<FormulaPtr> kids;    // operands
  unsigned len_n = 0;              // Len
};

FormulaPtr f_true();
FormulaPtr pred(ExprPtr e);
FormulaPtr f_not(FormulaPtr f);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_exists(VarName v, FormulaPtr f);
FormulaPtr f_skip();
FormulaPtr f_chop(FormulaPtr a, FormulaPtr b);
FormulaPtr f_star(FormulaPtr f);

FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr f_iff(FormulaPtr a, FormulaPtr b);
FormulaPtr f_next(FormulaPtr f);
FormulaPtr f_wnext(FormulaPtr f);
FormulaPtr f_prev(FormulaPtr f);
FormulaPtr f_wprev(FormulaPtr f);
FormulaPtr f_diamond(FormulaPtr f);
FormulaPtr f_box(FormulaPtr f);
FormulaPtr f_diamond_i(FormulaPtr f);
FormulaPtr f_box_i(FormulaPtr f);
FormulaPtr f_diamond_a(FormulaPtr f);
FormulaPtr f_box_a(FormulaPtr f);
FormulaPtr f_empty();
FormulaPtr f_more();

FormulaPtr assign(VarName v, ExprPtr e);
FormulaPtr unit_assign(VarName v, ExprPtr e);
FormulaPtr temp_assign(VarName v, ExprPtr e);
FormulaPtr past_assign(VarName v, ExprPtr e);
FormulaPtr gets(VarName v, ExprPtr e);
FormulaPtr f_if(FormulaPtr c, FormulaPtr t, FormulaPtr e);
FormulaPtr f_len(unsigned n);
FormulaPtr f_fin(FormulaPtr f);
FormulaPtr f_init(FormulaPtr f);
FormulaPtr f_halt(FormulaPtr f);
FormulaPtr f_keep(FormulaPtr f);
FormulaPtr f_initonly(FormulaPtr f);
FormulaPtr f_while(FormulaPtr cond, FormulaPtr body);

bool equal(const Formula& a, const Formula& b);
inline bool equal(const FormulaPtr& a, const FormulaPtr& b) { return equal(*a, *b); }

// Free variables. Exists binds; assignment targets count as occurrences.
std::set<VarName> free_vars(const Expr& e);
std::set<VarName> free_vars(const Formula& f);

// True when every operator application matches its signature and no variable
// name occurs at two different sorts.
bool well_sorted(const Formula& f);
std::optional<std::string> sort_problem(const Formula& f);

// Rewrites every derived construct into the kernel fragment
// {True, Pred, Not, And, Exists, Skip, Chop, ChopStar}.
FormulaPtr desugar(const FormulaPtr& f);

bool is_kernel(const Formula& f);

// Union of read_mask over every expression occurring in f.
unsigned formula_read_mask(const Formula& f);

// State formulas look only at the first state: no temporal operators, and
// every expression reads plain variables only.
bool is_state_formula(const Formula& f);

}  // namespace itl
