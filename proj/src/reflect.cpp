#include "itl/reflect.hpp"

#include "itl/errors.hpp"

namespace itl {

ExprPtr reflect_expr(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::ConstInt:
    case ExprKind::ConstBool:
      return e;
    case ExprKind::Var:
      return e_fin(e->var);
    case ExprKind::FinVar:
      return e_var(e->var);
    case ExprKind::NextVar:
      return e_prev(e->var);
    case ExprKind::PrevVar:
      return e_next(e->var);
    case ExprKind::Apply: {
      std::vector<ExprPtr> args;
      args.reserve(e->args.size());
      for (const auto& a : e->args) args.push_back(reflect_expr(a));
      return e_apply(e->op, std::move(args));
    }
  }
  throw Error("reflect_expr: unhandled expression");
}

namespace {

FormulaPtr reflect_rec(const FormulaPtr& f, std::vector<std::string>* log) {
  auto note = [&](const char* id) {
    if (log) log->push_back(id);
  };
  auto r = [&](const FormulaPtr& g) { return reflect_rec(g, log); };

  switch (f->kind) {
    case FormulaKind::True:
      note("R0");
      return f;
    case FormulaKind::Not:
      note("R1");
      return f_not(r(f->kids[0]));
    case FormulaKind::And:
      note("R2");
      return f_and(r(f->kids[0]), r(f->kids[1]));
    case FormulaKind::Skip:
      note("R3");
      return f;
    case FormulaKind::Chop:
      note("R4");
      return f_chop(r(f->kids[1]), r(f->kids[0]));
    case FormulaKind::ChopStar:
      note("R5");
      return f_star(r(f->kids[0]));
    case FormulaKind::Pred:
      note("R6");
      return pred(reflect_expr(f->expr));
    case FormulaKind::Exists:
      note("R7");
      return f_exists(f->var, r(f->kids[0]));

    case FormulaKind::Or:
      note("C-OR");
      return f_or(r(f->kids[0]), r(f->kids[1]));
    case FormulaKind::Implies:
      note("C-IMPLIES");
      return f_implies(r(f->kids[0]), r(f->kids[1]));
    case FormulaKind::Iff:
      note("C-IFF");
      return f_iff(r(f->kids[0]), r(f->kids[1]));

    case FormulaKind::Empty:
      note("D-EMPTY");
      return f;
    case FormulaKind::More:
      note("D-MORE");
      return f;
    case FormulaKind::Next:
      note("D-NEXT");
      return f_prev(r(f->kids[0]));
    case FormulaKind::Prev:
      note("D-PREV");
      return f_next(r(f->kids[0]));
    case FormulaKind::WNext:
      note("D-WNEXT");
      return f_wprev(r(f->kids[0]));
    case FormulaKind::WPrev:
      note("D-WPREV");
      return f_wnext(r(f->kids[0]));
    case FormulaKind::Diamond:
      note("D-DIAMOND");
      return f_diamond_i(r(f->kids[0]));
    case FormulaKind::DiamondI:
      note("D-DIAMOND-I");
      return f_diamond(r(f->kids[0]));
    case FormulaKind::Box:
      note("D-BOX");
      return f_box_i(r(f->kids[0]));
    case FormulaKind::BoxI:
      note("D-BOX-I");
      return f_box(r(f->kids[0]));
    case FormulaKind::DiamondA:
      note("D-DIAMOND-A");
      return f_diamond_a(r(f->kids[0]));
    case FormulaKind::BoxA:
      note("D-BOX-A");
      return f_box_a(r(f->kids[0]));

    case FormulaKind::Assign:
      note("P-ASSIGN");
      return temp_assign(f->var, reflect_expr(f->expr));
    case FormulaKind::TempAssign:
      note("P-TEMP-ASSIGN");
      return assign(f->var, reflect_expr(f->expr));
    case FormulaKind::UnitAssign:
      note("P-UNIT-ASSIGN");
      return past_assign(f->var, reflect_expr(f->expr));
    case FormulaKind::PastAssign:
      note("P-PAST-ASSIGN");
      return unit_assign(f->var, reflect_expr(f->expr));
    case FormulaKind::Gets:
      note("P-GETS");
      return f_box_a(f_implies(f_skip(), assign(f->var, reflect_expr(f->expr))));
    case FormulaKind::If:
      note("P-IF");
      return f_if(r(f->kids[0]), r(f->kids[1]), r(f->kids[2]));
    case FormulaKind::Len:
      note("P-LEN");
      return f;

    // A formula pinned to a one-state endpoint is unchanged by reversal,
    // so these two swap without touching the operand.
    case FormulaKind::Fin:
      note("P-FIN");
      return f_init(f->kids[0]);
    case FormulaKind::Init:
      note("P-INIT");
      return f_fin(f->kids[0]);

    case FormulaKind::Halt:
      note("P-HALT");
      return f_initonly(r(f->kids[0]));
    case FormulaKind::InitOnly:
      note("P-INITONLY");
      return f_halt(r(f->kids[0]));
    case FormulaKind::Keep:
      note("P-KEEP");
      return f_keep(r(f->kids[0]));
    case FormulaKind::While:
      note("P-WHILE");
      return f_and(f_star(f_and(r(f->kids[0]), r(f->kids[1]))), f_init(f_not(f->kids[0])));
  }
  throw Error("reflect_formula: unhandled constructor");
}

}  // namespace

FormulaPtr reflect_formula(const FormulaPtr& f) { return reflect_rec(f, nullptr); }

ReflectionReport reflect_formula_report(const FormulaPtr& f) {
  ReflectionReport rep;
  rep.input = f;
  rep.output = reflect_rec(f, &rep.laws_applied);
  return rep;
}

LawCheckResult check_reflection_law(const FormulaPtr& f, const Domain& d, const EvalConfig& cfg) {
  LawCheckResult r;
  FormulaPtr rf = reflect_formula(f);
  for_each_interval(d, [&](const Interval& in) {
    if (eval_formula(*rf, in, cfg) != eval_formula(*f, reverse(in), cfg)) {
      r.holds = false;
      r.counterexample = in;
      return false;
    }
    return true;
  });
  return r;
}

LawCheckResult check_fixed_length_var_laws(const Domain& d, const EvalConfig& cfg) {
  LawCheckResult r;
  for (const VarName& v : d.vars) {
    std::vector<FormulaPtr> laws = {
        f_implies(f_empty(), pred(e_eq(e_fin(v), e_var(v)))),
        f_implies(f_skip(), pred(e_eq(e_fin(v), e_next(v)))),
        f_implies(f_skip(), pred(e_eq(e_prev(v), e_var(v)))),
    };
    for (const auto& law : laws) {
      ValidityResult vr = valid_bounded(law, d, cfg);
      if (!vr.valid) {
        r.holds = false;
        r.counterexample = vr.counterexample;
        return r;
      }
    }
  }
  return r;
}

}  // namespace itl
