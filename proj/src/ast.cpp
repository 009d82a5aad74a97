#include "itl/ast.hpp"

#include <cctype>
#include <map>
#include <utility>

#include "itl/errors.hpp"

namespace itl {

bool valid_identifier(const std::string& name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

VarName int_var(std::string name) {
  if (!valid_identifier(name)) throw Error("bad variable name: " + name);
  return VarName{std::move(name), Sort::Int};
}

VarName bool_var(std::string name) {
  if (!valid_identifier(name)) throw Error("bad variable name: " + name);
  return VarName{std::move(name), Sort::Bool};
}

std::string to_string(const Value& v) {
  if (v.sort == Sort::Bool) return v.as_bool() ? "true" : "false";
  return std::to_string(v.as_int());
}

// ---------------------------------------------------------------------------
// Expression factories
// ---------------------------------------------------------------------------

ExprPtr e_int(std::int64_t v) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::ConstInt;
  e->int_val = v;
  return e;
}

ExprPtr e_bool(bool v) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::ConstBool;
  e->bool_val = v;
  return e;
}

static ExprPtr var_like(ExprKind k, VarName v) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->var = std::move(v);
  return e;
}

ExprPtr e_var(VarName v) { return var_like(ExprKind::Var, std::move(v)); }
ExprPtr e_next(VarName v) { return var_like(ExprKind::NextVar, std::move(v)); }
ExprPtr e_fin(VarName v) { return var_like(ExprKind::FinVar, std::move(v)); }
ExprPtr e_prev(VarName v) { return var_like(ExprKind::PrevVar, std::move(v)); }

ExprPtr e_apply(std::string op, std::vector<ExprPtr> args) {
  if (!find_operator(op)) throw Error("unknown operator: " + op);
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Apply;
  e->op = std::move(op);
  e->args = std::move(args);
  return e;
}

ExprPtr e_add(ExprPtr a, ExprPtr b) { return e_apply("+", {std::move(a), std::move(b)}); }
ExprPtr e_sub(ExprPtr a, ExprPtr b) { return e_apply("-", {std::move(a), std::move(b)}); }
ExprPtr e_mul(ExprPtr a, ExprPtr b) { return e_apply("*", {std::move(a), std::move(b)}); }
ExprPtr e_div(ExprPtr a, ExprPtr b) { return e_apply("div", {std::move(a), std::move(b)}); }
ExprPtr e_mod(ExprPtr a, ExprPtr b) { return e_apply("mod", {std::move(a), std::move(b)}); }
ExprPtr e_eq(ExprPtr a, ExprPtr b) { return e_apply("=", {std::move(a), std::move(b)}); }
ExprPtr e_lt(ExprPtr a, ExprPtr b) { return e_apply("<", {std::move(a), std::move(b)}); }
ExprPtr e_le(ExprPtr a, ExprPtr b) { return e_apply("<=", {std::move(a), std::move(b)}); }
ExprPtr e_gt(ExprPtr a, ExprPtr b) { return e_apply(">", {std::move(a), std::move(b)}); }
ExprPtr e_ge(ExprPtr a, ExprPtr b) { return e_apply(">=", {std::move(a), std::move(b)}); }

bool equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprKind::ConstInt:
      return a.int_val == b.int_val;
    case ExprKind::ConstBool:
      return a.bool_val == b.bool_val;
    case ExprKind::Var:
    case ExprKind::NextVar:
    case ExprKind::FinVar:
    case ExprKind::PrevVar:
      return a.var == b.var;
    case ExprKind::Apply: {
      if (a.op != b.op || a.args.size() != b.args.size()) return false;
      for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (!equal(*a.args[i], *b.args[i])) return false;
      }
      return true;
    }
  }
  return false;
}

unsigned read_mask(const Expr& e) {
  switch (e.kind) {
    case ExprKind::ConstInt:
    case ExprKind::ConstBool:
      return 0;
    case ExprKind::Var:
      return reads::kVar;
    case ExprKind::NextVar:
      return reads::kNext;
    case ExprKind::FinVar:
      return reads::kFin;
    case ExprKind::PrevVar:
      return reads::kPrev;
    case ExprKind::Apply: {
      unsigned m = 0;
      for (const auto& a : e.args) m |= read_mask(*a);
      return m;
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Operators
// ---------------------------------------------------------------------------

static void check_div(std::int64_t b) {
  if (b == 0) throw EvalError(EvalError::Kind::DivisionByZero, "division by zero");
}

static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw EvalError(EvalError::Kind::Overflow, "integer overflow in +");
  return r;
}

static std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r))
    throw EvalError(EvalError::Kind::Overflow, "integer overflow in -");
  return r;
}

static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw EvalError(EvalError::Kind::Overflow, "integer overflow in *");
  return r;
}

static std::map<std::string, Operator>& operator_table() {
  static std::map<std::string, Operator> table = [] {
    std::map<std::string, Operator> t;
    auto add = [&](Operator op) { t.emplace(op.name, std::move(op)); };
    auto int2 = std::vector<Sort>{Sort::Int, Sort::Int};
    auto bool2 = std::vector<Sort>{Sort::Bool, Sort::Bool};
    add({"+", int2, Sort::Int, false,
         [](const std::vector<Value>& a) { return Value::of_int(checked_add(a[0].num, a[1].num)); }});
    add({"-", int2, Sort::Int, false,
         [](const std::vector<Value>& a) { return Value::of_int(checked_sub(a[0].num, a[1].num)); }});
    add({"*", int2, Sort::Int, false,
         [](const std::vector<Value>& a) { return Value::of_int(checked_mul(a[0].num, a[1].num)); }});
    add({"div", int2, Sort::Int, false, [](const std::vector<Value>& a) {
           check_div(a[1].num);
           if (a[0].num == INT64_MIN && a[1].num == -1)
             throw EvalError(EvalError::Kind::Overflow, "integer overflow in div");
           return Value::of_int(a[0].num / a[1].num);
         }});
    add({"mod", int2, Sort::Int, false, [](const std::vector<Value>& a) {
           check_div(a[1].num);
           if (a[0].num == INT64_MIN && a[1].num == -1)
             throw EvalError(EvalError::Kind::Overflow, "integer overflow in mod");
           return Value::of_int(a[0].num % a[1].num);
         }});
    add({"=", int2, Sort::Bool, true,
         [](const std::vector<Value>& a) { return Value::of_bool(a[0] == a[1]); }});
    add({"<", int2, Sort::Bool, false,
         [](const std::vector<Value>& a) { return Value::of_bool(a[0].num < a[1].num); }});
    add({"<=", int2, Sort::Bool, false,
         [](const std::vector<Value>& a) { return Value::of_bool(a[0].num <= a[1].num); }});
    add({">", int2, Sort::Bool, false,
         [](const std::vector<Value>& a) { return Value::of_bool(a[0].num > a[1].num); }});
    add({">=", int2, Sort::Bool, false,
         [](const std::vector<Value>& a) { return Value::of_bool(a[0].num >= a[1].num); }});
    add({"and", bool2, Sort::Bool, false,
         [](const std::vector<Value>& a) { return Value::of_bool(a[0].as_bool() && a[1].as_bool()); }});
    add({"or", bool2, Sort::Bool, false,
         [](const std::vector<Value>& a) { return Value::of_bool(a[0].as_bool() || a[1].as_bool()); }});
    add({"not", {Sort::Bool}, Sort::Bool, false,
         [](const std::vector<Value>& a) { return Value::of_bool(!a[0].as_bool()); }});
    return t;
  }();
  return table;
}

const Operator* find_operator(const std::string& name) {
  auto& t = operator_table();
  auto it = t.find(name);
  return it == t.end() ? nullptr : &it->second;
}

void register_operator(Operator op) {
  if (!op.fn) throw Error("operator " + op.name + " has no evaluation function");
  operator_table().insert_or_assign(op.name, std::move(op));
}

// ---------------------------------------------------------------------------
// Formula factories
// ---------------------------------------------------------------------------

static FormulaPtr node(FormulaKind k) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  return f;
}

static FormulaPtr node1(FormulaKind k, FormulaPtr a) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->kids = {std::move(a)};
  return f;
}

static FormulaPtr node2(FormulaKind k, FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->kids = {std::move(a), std::move(b)};
  return f;
}

static FormulaPtr assign_like(FormulaKind k, VarName v, ExprPtr e) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->var = std::move(v);
  f->expr = std::move(e);
  return f;
}

FormulaPtr f_true() { return node(FormulaKind::True); }

FormulaPtr pred(ExprPtr e) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Pred;
  f->expr = std::move(e);
  return f;
}

FormulaPtr f_not(FormulaPtr f) { return node1(FormulaKind::Not, std::move(f)); }
FormulaPtr f_and(FormulaPtr a, FormulaPtr b) { return node2(FormulaKind::And, std::move(a), std::move(b)); }

FormulaPtr f_exists(VarName v, FormulaPtr f) {
  auto r = std::make_shared<Formula>();
  r->kind = FormulaKind::Exists;
  r->var = std::move(v);
  r->kids = {std::move(f)};
  return r;
}

FormulaPtr f_skip() { return node(FormulaKind::Skip); }
FormulaPtr f_chop(FormulaPtr a, FormulaPtr b) { return node2(FormulaKind::Chop, std::move(a), std::move(b)); }
FormulaPtr f_star(FormulaPtr f) { return node1(FormulaKind::ChopStar, std::move(f)); }

FormulaPtr f_or(FormulaPtr a, FormulaPtr b) { return node2(FormulaKind::Or, std::move(a), std::move(b)); }
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) { return node2(FormulaKind::Implies, std::move(a), std::move(b)); }
FormulaPtr f_iff(FormulaPtr a, FormulaPtr b) { return node2(FormulaKind::Iff, std::move(a), std::move(b)); }
FormulaPtr f_next(FormulaPtr f) { return node1(FormulaKind::Next, std::move(f)); }
FormulaPtr f_wnext(FormulaPtr f) { return node1(FormulaKind::WNext, std::move(f)); }
FormulaPtr f_prev(FormulaPtr f) { return node1(FormulaKind::Prev, std::move(f)); }
FormulaPtr f_wprev(FormulaPtr f) { return node1(FormulaKind::WPrev, std::move(f)); }
FormulaPtr f_diamond(FormulaPtr f) { return node1(FormulaKind::Diamond, std::move(f)); }
FormulaPtr f_box(FormulaPtr f) { return node1(FormulaKind::Box, std::move(f)); }
FormulaPtr f_diamond_i(FormulaPtr f) { return node1(FormulaKind::DiamondI, std::move(f)); }
FormulaPtr f_box_i(FormulaPtr f) { return node1(FormulaKind::BoxI, std::move(f)); }
FormulaPtr f_diamond_a(FormulaPtr f) { return node1(FormulaKind::DiamondA, std::move(f)); }
FormulaPtr f_box_a(FormulaPtr f) { return node1(FormulaKind::BoxA, std::move(f)); }
FormulaPtr f_empty() { return node(FormulaKind::Empty); }
FormulaPtr f_more() { return node(FormulaKind::More); }

FormulaPtr assign(VarName v, ExprPtr e) { return assign_like(FormulaKind::Assign, std::move(v), std::move(e)); }
FormulaPtr unit_assign(VarName v, ExprPtr e) { return assign_like(FormulaKind::UnitAssign, std::move(v), std::move(e)); }
FormulaPtr temp_assign(VarName v, ExprPtr e) { return assign_like(FormulaKind::TempAssign, std::move(v), std::move(e)); }
FormulaPtr past_assign(VarName v, ExprPtr e) { return assign_like(FormulaKind::PastAssign, std::move(v), std::move(e)); }
FormulaPtr gets(VarName v, ExprPtr e) { return assign_like(FormulaKind::Gets, std::move(v), std::move(e)); }

FormulaPtr f_if(FormulaPtr c, FormulaPtr t, FormulaPtr e) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::If;
  f->kids = {std::move(c), std::move(t), std::move(e)};
  return f;
}

FormulaPtr f_len(unsigned n) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Len;
  f->len_n = n;
  return f;
}

FormulaPtr f_fin(FormulaPtr f) { return node1(FormulaKind::Fin, std::move(f)); }
FormulaPtr f_init(FormulaPtr f) { return node1(FormulaKind::Init, std::move(f)); }
FormulaPtr f_halt(FormulaPtr f) { return node1(FormulaKind::Halt, std::move(f)); }
FormulaPtr f_keep(FormulaPtr f) { return node1(FormulaKind::Keep, std::move(f)); }
FormulaPtr f_initonly(FormulaPtr f) { return node1(FormulaKind::InitOnly, std::move(f)); }
FormulaPtr f_while(FormulaPtr cond, FormulaPtr body) {
  return node2(FormulaKind::While, std::move(cond), std::move(body));
}

bool equal(const Formula& a, const Formula& b) {
  if (a.kind != b.kind) return false;
  if (a.len_n != b.len_n) return false;
  if (a.var != b.var) return false;
  if ((a.expr == nullptr) != (b.expr == nullptr)) return false;
  if (a.expr && !equal(*a.expr, *b.expr)) return false;
  if (a.kids.size() != b.kids.size()) return false;
  for (std::size_t i = 0; i < a.kids.size(); ++i) {
    if (!equal(*a.kids[i], *b.kids[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Free variables and sorts
// ---------------------------------------------------------------------------

static void collect_free(const Expr& e, std::set<VarName>& out) {
  switch (e.kind) {
    case ExprKind::Var:
    case ExprKind::NextVar:
    case ExprKind::FinVar:
    case ExprKind::PrevVar:
      out.insert(e.var);
      break;
    case ExprKind::Apply:
      for (const auto& a : e.args) collect_free(*a, out);
      break;
    default:
      break;
  }
}

static void collect_free(const Formula& f, std::set<VarName>& out) {
  if (f.kind == FormulaKind::Exists) {
    std::set<VarName> inner;
    collect_free(*f.kids[0], inner);
    inner.erase(f.var);
    out.insert(inner.begin(), inner.end());
    return;
  }
  if (f.expr) collect_free(*f.expr, out);
  switch (f.kind) {
    case FormulaKind::Assign:
    case FormulaKind::UnitAssign:
    case FormulaKind::TempAssign:
    case FormulaKind::PastAssign:
    case FormulaKind::Gets:
      out.insert(f.var);
      break;
    default:
      break;
  }
  for (const auto& k : f.kids) collect_free(*k, out);
}

std::set<VarName> free_vars(const Expr& e) {
  std::set<VarName> out;
  collect_free(e, out);
  return out;
}

std::set<VarName> free_vars(const Formula& f) {
  std::set<VarName> out;
  collect_free(f, out);
  return out;
}

namespace {

struct SortChecker {
  std::map<std::string, Sort> seen;
  std::optional<std::string> problem;

  void name_sort(const VarName& v) {
    auto [it, inserted] = seen.emplace(v.name, v.sort);
    if (!inserted && it->second != v.sort && !problem) {
      problem = "variable " + v.name + " used at both sorts";
    }
  }

  std::optional<Sort> expr_sort(const Expr& e) {
    switch (e.kind) {
      case ExprKind::ConstInt:
        return Sort::Int;
      case ExprKind::ConstBool:
        return Sort::Bool;
      case ExprKind::Var:
      case ExprKind::NextVar:
      case ExprKind::FinVar:
      case ExprKind::PrevVar:
        name_sort(e.var);
        return e.var.sort;
      case ExprKind::Apply: {
        const Operator* op = find_operator(e.op);
        if (!op) {
          if (!problem) problem = "unknown operator " + e.op;
          return std::nullopt;
        }
        if (e.args.size() != op->params.size()) {
          if (!problem) problem = "operator " + e.op + " arity mismatch";
          return std::nullopt;
        }
        std::vector<Sort> arg_sorts;
        for (const auto& a : e.args) {
          auto s = expr_sort(*a);
          if (!s) return std::nullopt;
          arg_sorts.push_back(*s);
        }
        if (op->poly_eq) {
          if (arg_sorts[0] != arg_sorts[1]) {
            if (!problem) problem = "operator = applied to different sorts";
            return std::nullopt;
          }
        } else {
          for (std::size_t i = 0; i < arg_sorts.size(); ++i) {
            if (arg_sorts[i] != op->params[i]) {
              if (!problem) problem = "operator " + e.op + " argument sort mismatch";
              return std::nullopt;
            }
          }
        }
        return op->result;
      }
    }
    return std::nullopt;
  }

  void require_bool(const Expr& e, const char* where) {
    auto s = expr_sort(e);
    if (s && *s != Sort::Bool && !problem) {
      problem = std::string(where) + " requires a boolean expression";
    }
  }

  void assign_target(const Formula& f) {
    name_sort(f.var);
    auto s = expr_sort(*f.expr);
    if (s && *s != f.var.sort && !problem) {
      problem = "assignment to " + f.var.name + " has wrong sort";
    }
  }

  void check(const Formula& f) {
    if (problem) return;
    switch (f.kind) {
      case FormulaKind::Pred:
        require_bool(*f.expr, "predicate");
        break;
      case FormulaKind::Assign:
      case FormulaKind::UnitAssign:
      case FormulaKind::TempAssign:
      case FormulaKind::PastAssign:
      case FormulaKind::Gets:
        assign_target(f);
        break;
      case FormulaKind::Exists:
        name_sort(f.var);
        break;
      default:
        break;
    }
    for (const auto& k : f.kids) check(*k);
  }
};

}  // namespace

std::optional<std::string> sort_problem(const Formula& f) {
  SortChecker c;
  c.check(f);
  return c.problem;
}

bool well_sorted(const Formula& f) { return !sort_problem(f).has_value(); }

// ---------------------------------------------------------------------------
// Desugaring
// ---------------------------------------------------------------------------

unsigned formula_read_mask(const Formula& f) {
  unsigned m = 0;
  if (f.expr) m |= read_mask(*f.expr);
  switch (f.kind) {
    case FormulaKind::Assign:
      m |= reads::kVar;
      break;
    case FormulaKind::UnitAssign:
      m |= reads::kNext;
      break;
    case FormulaKind::TempAssign:
      m |= reads::kFin;
      break;
    case FormulaKind::PastAssign:
      m |= reads::kPrev;
      break;
    default:
      break;
  }
  for (const auto& k : f.kids) m |= formula_read_mask(*k);
  return m;
}

bool is_state_formula(const Formula& f) {
  switch (f.kind) {
    case FormulaKind::True:
      return true;
    case FormulaKind::Pred:
      return (read_mask(*f.expr) & ~reads::kVar) == 0;
    case FormulaKind::Assign:
      return (read_mask(*f.expr) & ~reads::kVar) == 0;
    case FormulaKind::Not:
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Iff:
    case FormulaKind::If:
      for (const auto& k : f.kids) {
        if (!is_state_formula(*k)) return false;
      }
      return true;
    default:
      return false;
  }
}

bool is_kernel(const Formula& f) {
  switch (f.kind) {
    case FormulaKind::True:
    case FormulaKind::Pred:
    case FormulaKind::Not:
    case FormulaKind::And:
    case FormulaKind::Exists:
    case FormulaKind::Skip:
    case FormulaKind::Chop:
    case FormulaKind::ChopStar:
      for (const auto& k : f.kids) {
        if (!is_kernel(*k)) return false;
      }
      return true;
    default:
      return false;
  }
}

FormulaPtr desugar(const FormulaPtr& f) {
  auto ds = [](const FormulaPtr& g) { return desugar(g); };
  switch (f->kind) {
    case FormulaKind::True:
    case FormulaKind::Skip:
      return f;
    case FormulaKind::Pred:
      return f;
    case FormulaKind::Not:
      return f_not(ds(f->kids[0]));
    case FormulaKind::And:
      return f_and(ds(f->kids[0]), ds(f->kids[1]));
    case FormulaKind::Exists:
      return f_exists(f->var, ds(f->kids[0]));
    case FormulaKind::Chop:
      return f_chop(ds(f->kids[0]), ds(f->kids[1]));
    case FormulaKind::ChopStar:
      return f_star(ds(f->kids[0]));

    case FormulaKind::Or:
      return f_not(f_and(f_not(ds(f->kids[0])), f_not(ds(f->kids[1]))));
    case FormulaKind::Implies:
      return f_not(f_and(ds(f->kids[0]), f_not(ds(f->kids[1]))));
    case FormulaKind::Iff:
      return desugar(f_and(f_implies(f->kids[0], f->kids[1]), f_implies(f->kids[1], f->kids[0])));
    case FormulaKind::Next:
      return f_chop(f_skip(), ds(f->kids[0]));
    case FormulaKind::WNext:
      return desugar(f_or(f_empty(), f_next(f->kids[0])));
    case FormulaKind::Prev:
      return f_chop(ds(f->kids[0]), f_skip());
    case FormulaKind::WPrev:
      return desugar(f_or(f_empty(), f_prev(f->kids[0])));
    case FormulaKind::Diamond:
      return f_chop(f_true(), ds(f->kids[0]));
    case FormulaKind::Box:
      return f_not(f_chop(f_true(), f_not(ds(f->kids[0]))));
    case FormulaKind::DiamondI:
      return f_chop(ds(f->kids[0]), f_true());
    case FormulaKind::BoxI:
      return f_not(f_chop(f_not(ds(f->kids[0])), f_true()));
    case FormulaKind::DiamondA:
      return f_chop(f_true(), f_chop(ds(f->kids[0]), f_true()));
    case FormulaKind::BoxA:
      return f_not(f_chop(f_true(), f_chop(f_not(ds(f->kids[0])), f_true())));
    case FormulaKind::Empty:
      return f_not(f_chop(f_skip(), f_true()));
    case FormulaKind::More:
      return f_chop(f_skip(), f_true());

    case FormulaKind::Assign:
      return pred(e_eq(e_var(f->var), f->expr));
    case FormulaKind::UnitAssign:
      return pred(e_eq(e_next(f->var), f->expr));
    case FormulaKind::TempAssign:
      return pred(e_eq(e_fin(f->var), f->expr));
    case FormulaKind::PastAssign:
      return pred(e_eq(e_prev(f->var), f->expr));
    case FormulaKind::Gets:
      return desugar(f_box_a(f_implies(f_skip(), temp_assign(f->var, f->expr))));
    case FormulaKind::If:
      return desugar(f_or(f_and(f->kids[0], f->kids[1]), f_and(f_not(f->kids[0]), f->kids[2])));
    case FormulaKind::Len: {
      FormulaPtr r = desugar(f_empty());
      for (unsigned i = 0; i < f->len_n; ++i) r = f_chop(f_skip(), r);
      return r;
    }
    case FormulaKind::Fin:
      return desugar(f_box(f_implies(f_empty(), f->kids[0])));
    case FormulaKind::Init:
      return desugar(f_box_i(f_implies(f_empty(), f->kids[0])));
    case FormulaKind::Halt:
      return desugar(f_box(f_iff(f_empty(), f->kids[0])));
    case FormulaKind::InitOnly:
      return desugar(f_box_i(f_iff(f_empty(), f->kids[0])));
    case FormulaKind::Keep:
      return desugar(f_box_a(f_implies(f_skip(), f->kids[0])));
    case FormulaKind::While:
      return desugar(f_and(f_star(f_and(f->kids[0], f->kids[1])), f_fin(f_not(f->kids[0]))));
  }
  throw Error("desugar: unhandled constructor");
}

}  // namespace itl
