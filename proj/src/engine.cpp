#include "itl/engine.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "itl/errors.hpp"
#include "itl/exec.hpp"
#include "itl/reflect.hpp"

namespace itl {

namespace {

using reads::kFin;
using reads::kNext;
using reads::kPrev;
using reads::kVar;

[[noreturn]] void not_executable(const std::string& what) {
  throw EngineError(EngineError::Kind::NotExecutable, what);
}

// An obligation for the states after the current one, finalized once the
// current state is known.
using Rest = std::function<FormulaPtr(const State&)>;

// One way of resolving the current step. `now` is checked on the current
// state alone; `unit` constrains the pair (current, next) and is carried
// forward; `rest` builds what must hold from the next state on.
struct Plan {
  bool ends = false;
  std::vector<FormulaPtr> now;
  std::vector<FormulaPtr> unit;
  std::vector<Rest> rest;
};

Rest keep_rest(FormulaPtr f) {
  return [f = std::move(f)](const State&) { return f; };
}

// ---------------------------------------------------------------------------
// Expression and predicate rewriting
// ---------------------------------------------------------------------------

ExprPtr const_of(const Value& v) {
  return v.sort == Sort::Int ? e_int(v.as_int()) : e_bool(v.as_bool());
}

ExprPtr rewrite_leaves(const ExprPtr& e, const std::function<ExprPtr(const ExprPtr&)>& leaf) {
  if (e->kind == ExprKind::Apply) {
    std::vector<ExprPtr> args;
    args.reserve(e->args.size());
    for (const auto& a : e->args) args.push_back(rewrite_leaves(a, leaf));
    return e_apply(e->op, std::move(args));
  }
  return leaf(e);
}

// Plain variable reads become constants taken from s.
ExprPtr freeze_expr(const ExprPtr& e, const State& s) {
  return rewrite_leaves(e, [&s](const ExprPtr& l) {
    if (l->kind == ExprKind::Var) return const_of(s.at(l->var));
    return l;
  });
}

// Reads rebased to a window that is known to span exactly one unit:
// the previous state is the first one, the final state is the next one.
ExprPtr unit_reads_expr(const ExprPtr& e) {
  return rewrite_leaves(e, [](const ExprPtr& l) {
    if (l->kind == ExprKind::PrevVar) return e_var(l->var);
    if (l->kind == ExprKind::FinVar) return e_next(l->var);
    return l;
  });
}

// A carried unit constraint, advanced past the committed state s: current
// reads freeze to constants, next-state reads become current reads.
ExprPtr advance_expr(const ExprPtr& e, const State& s) {
  return rewrite_leaves(e, [&s](const ExprPtr& l) {
    switch (l->kind) {
      case ExprKind::Var:
        return const_of(s.at(l->var));
      case ExprKind::NextVar:
        return e_var(l->var);
      case ExprKind::FinVar:
      case ExprKind::PrevVar:
        not_executable("a carried unit constraint may only read current and next values");
      default:
        return l;
    }
  });
}

// Assignment forms and boolean structure rewritten to plain predicates, or
// null when f is not built from predicates by not/and/or/implies/iff.
FormulaPtr pred_normal(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::True:
    case FormulaKind::Pred:
      return f;
    case FormulaKind::Assign:
      return pred(e_eq(e_var(f->var), f->expr));
    case FormulaKind::UnitAssign:
      return pred(e_eq(e_next(f->var), f->expr));
    case FormulaKind::TempAssign:
      return pred(e_eq(e_fin(f->var), f->expr));
    case FormulaKind::PastAssign:
      return pred(e_eq(e_prev(f->var), f->expr));
    case FormulaKind::Not: {
      FormulaPtr k = pred_normal(f->kids[0]);
      return k ? f_not(k) : nullptr;
    }
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Iff: {
      FormulaPtr a = pred_normal(f->kids[0]);
      FormulaPtr b = a ? pred_normal(f->kids[1]) : nullptr;
      if (!b) return nullptr;
      switch (f->kind) {
        case FormulaKind::And: return f_and(a, b);
        case FormulaKind::Or: return f_or(a, b);
        case FormulaKind::Implies: return f_implies(a, b);
        default: return f_iff(a, b);
      }
    }
    default:
      return nullptr;
  }
}

// fn applied to every predicate expression of a pred_normal result.
FormulaPtr map_pred_exprs(const FormulaPtr& f, const std::function<ExprPtr(const ExprPtr&)>& fn) {
  switch (f->kind) {
    case FormulaKind::True:
      return f;
    case FormulaKind::Pred:
      return pred(fn(f->expr));
    case FormulaKind::Not:
      return f_not(map_pred_exprs(f->kids[0], fn));
    case FormulaKind::And:
      return f_and(map_pred_exprs(f->kids[0], fn), map_pred_exprs(f->kids[1], fn));
    case FormulaKind::Or:
      return f_or(map_pred_exprs(f->kids[0], fn), map_pred_exprs(f->kids[1], fn));
    case FormulaKind::Implies:
      return f_implies(map_pred_exprs(f->kids[0], fn), map_pred_exprs(f->kids[1], fn));
    case FormulaKind::Iff:
      return f_iff(map_pred_exprs(f->kids[0], fn), map_pred_exprs(f->kids[1], fn));
    default:
      not_executable("internal: not a predicate combination");
  }
}

FormulaPtr freeze_formula(const FormulaPtr& f, const State& s) {
  return map_pred_exprs(f, [&s](const ExprPtr& e) { return freeze_expr(e, s); });
}

// ---------------------------------------------------------------------------
// Step decomposition
// ---------------------------------------------------------------------------

bool holds_at(const FormulaPtr& f, const State& s, const EvalConfig& cfg) {
  return eval_formula(*f, Interval({s}), cfg);
}

FormulaPtr fold_rest(const std::vector<Rest>& rest, const State& s) {
  std::vector<FormulaPtr> parts;
  for (const auto& r : rest) {
    FormulaPtr p = r(s);
    if (p->kind == FormulaKind::True) continue;
    bool dup = false;
    for (const auto& q : parts) {
      if (equal(p, q)) { dup = true; break; }
    }
    if (!dup) parts.push_back(std::move(p));
  }
  if (parts.empty()) return f_true();
  FormulaPtr out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out = f_and(out, parts[i]);
  return out;
}

std::vector<Plan> decompose(const FormulaPtr& f, const EvalConfig& cfg);

Plan end_plan(std::vector<FormulaPtr> now = {}) {
  Plan p;
  p.ends = true;
  p.now = std::move(now);
  return p;
}

Plan cont_plan(std::vector<FormulaPtr> now = {}, std::vector<FormulaPtr> unit = {},
               std::vector<Rest> rest = {}) {
  Plan p;
  p.now = std::move(now);
  p.unit = std::move(unit);
  p.rest = std::move(rest);
  return p;
}

std::vector<Plan> dec_one(const FormulaPtr& c, const EvalConfig& cfg) {
  if (is_state_formula(*c)) return {end_plan({c}), cont_plan({c})};

  if (FormulaPtr n = pred_normal(c)) {
    unsigned m = formula_read_mask(*n);
    if (m & kPrev) {
      not_executable(
          "a previous-state read is only executable next to an explicit skip or len(1)");
    }
    if ((m & kNext) && (m & kFin)) {
      not_executable("a constraint mixing next-state and final-state reads");
    }
    if (m & kNext) return {end_plan({n}), cont_plan({}, {n})};
    // final-state reads: check directly when ending, otherwise freeze the
    // current reads and carry the rest to the end
    Rest carry = [n](const State& s) { return freeze_formula(n, s); };
    return {end_plan({n}), cont_plan({}, {}, {carry})};
  }

  switch (c->kind) {
    case FormulaKind::And:
      return decompose(c, cfg);
    case FormulaKind::Skip:
      return {cont_plan({}, {}, {keep_rest(f_empty())})};
    case FormulaKind::Empty:
      return {end_plan()};
    case FormulaKind::More:
      return {cont_plan({}, {}, {keep_rest(f_true())})};
    case FormulaKind::Len:
      if (c->len_n == 0) return {end_plan()};
      return {cont_plan({}, {}, {keep_rest(f_len(c->len_n - 1))})};
    case FormulaKind::Next:
      return {cont_plan({}, {}, {keep_rest(c->kids[0])})};
    case FormulaKind::WNext:
      return {end_plan(), cont_plan({}, {}, {keep_rest(c->kids[0])})};
    case FormulaKind::Fin:
      // exact for any operand: at the final state the operand is evaluated
      // on the one-state interval, and nothing before the end constrains it
      return {end_plan({c}), cont_plan({}, {}, {keep_rest(c)})};
    case FormulaKind::Init:
      // only the current state matters, in both phases
      return {end_plan({c}), cont_plan({c})};
    case FormulaKind::Halt: {
      const FormulaPtr& w = c->kids[0];
      if (!is_state_formula(*w)) not_executable("halt needs a state-formula operand");
      return {end_plan({w}), cont_plan({f_not(w)}, {}, {keep_rest(c)})};
    }
    case FormulaKind::InitOnly: {
      const FormulaPtr& h = c->kids[0];
      if (is_state_formula(*h)) return {end_plan({h})};
      FormulaPtr n = pred_normal(h);
      if (!n || (formula_read_mask(*n) & ~(kVar | kFin)) != 0) {
        not_executable("initonly needs an operand reading current and final values only");
      }
      Rest neg = [n](const State& s) { return f_box_i(f_not(freeze_formula(n, s))); };
      return {end_plan({c}), cont_plan({f_init(n)}, {}, {neg})};
    }
    case FormulaKind::Box: {
      const FormulaPtr& g = c->kids[0];
      if (is_state_formula(*g)) return {end_plan({g}), cont_plan({g}, {}, {keep_rest(c)})};
      FormulaPtr n = pred_normal(g);
      if (!n || (formula_read_mask(*n) & ~(kVar | kFin)) != 0) {
        not_executable("box needs a state formula or a final-state constraint as operand");
      }
      Rest carry = [n](const State& s) { return freeze_formula(n, s); };
      return {end_plan({c}), cont_plan({}, {}, {keep_rest(c), carry})};
    }
    case FormulaKind::BoxI: {
      const FormulaPtr& h = c->kids[0];
      if (is_state_formula(*h)) return {end_plan({h}), cont_plan({h})};
      FormulaPtr n = pred_normal(h);
      if (!n || (formula_read_mask(*n) & ~(kVar | kFin)) != 0) {
        not_executable("boxi needs an operand reading current and final values only");
      }
      Rest carry = [n](const State& s) { return f_box_i(freeze_formula(n, s)); };
      return {end_plan({c}), cont_plan({f_init(n)}, {}, {carry})};
    }
    case FormulaKind::Diamond:
    case FormulaKind::DiamondA: {
      const FormulaPtr& g = c->kids[0];
      if (g->kind == FormulaKind::Fin) return dec_one(g, cfg);
      if (!is_state_formula(*g) && g->kind != FormulaKind::Init) {
        not_executable("an eventuality is only executable for a one-state check");
      }
      Rest settle = [g, c, &cfg](const State& s) {
        return holds_at(g, s, cfg) ? f_true() : c;
      };
      return {end_plan({g}), cont_plan({}, {}, {settle})};
    }
    case FormulaKind::DiamondI: {
      const FormulaPtr& g = c->kids[0];
      if (!is_state_formula(*g) && g->kind != FormulaKind::Init) {
        not_executable("a some-prefix check is only executable for a one-state operand");
      }
      return {end_plan({g}), cont_plan({g})};
    }
    case FormulaKind::BoxA: {
      const FormulaPtr& g = c->kids[0];
      if (is_state_formula(*g)) return {end_plan({g}), cont_plan({g}, {}, {keep_rest(c)})};
      if (g->kind == FormulaKind::Implies && g->kids[0]->kind == FormulaKind::Skip) {
        return dec_one(f_keep(g->kids[1]), cfg);
      }
      not_executable("a subinterval constraint is only executable per state or per unit");
    }
    case FormulaKind::Keep: {
      const FormulaPtr& g = c->kids[0];
      FormulaPtr n = pred_normal(g);
      if (!n) not_executable("keep needs a predicate combination as operand");
      FormulaPtr u = map_pred_exprs(n, unit_reads_expr);
      if (formula_read_mask(*u) & kPrev) {
        not_executable("internal: unit rebase left a previous-state read");
      }
      return {end_plan(), cont_plan({}, {u}, {keep_rest(c)})};
    }
    case FormulaKind::Gets: {
      FormulaPtr u = pred(e_eq(e_next(c->var), unit_reads_expr(c->expr)));
      return {end_plan(), cont_plan({}, {u}, {keep_rest(c)})};
    }
    case FormulaKind::If: {
      const FormulaPtr& cond = c->kids[0];
      if (!is_state_formula(*cond)) not_executable("if needs a state-formula condition");
      std::vector<Plan> out;
      for (Plan p : decompose(c->kids[1], cfg)) {
        p.now.insert(p.now.begin(), cond);
        out.push_back(std::move(p));
      }
      FormulaPtr neg = f_not(cond);
      for (Plan p : decompose(c->kids[2], cfg)) {
        p.now.insert(p.now.begin(), neg);
        out.push_back(std::move(p));
      }
      return out;
    }
    case FormulaKind::While: {
      const FormulaPtr& cond = c->kids[0];
      if (!is_state_formula(*cond)) not_executable("while needs a state-formula condition");
      std::vector<Plan> out{end_plan({f_not(cond)})};
      for (const Plan& p : decompose(c->kids[1], cfg)) {
        if (p.ends) continue;  // loop chunks are never empty
        Plan q;
        q.now = p.now;
        q.now.insert(q.now.begin(), cond);
        q.unit = p.unit;
        std::vector<Rest> body_rest = p.rest;
        q.rest.push_back([body_rest, c](const State& s) {
          return f_chop(fold_rest(body_rest, s), c);
        });
        out.push_back(std::move(q));
      }
      return out;
    }
    case FormulaKind::Chop: {
      std::vector<Plan> first = decompose(c->kids[0], cfg);
      std::vector<Plan> second = decompose(c->kids[1], cfg);
      std::vector<Plan> out;
      // handing over at the current state comes first: the first part is
      // finished as early as possible
      for (const Plan& a : first) {
        if (!a.ends) continue;
        for (const Plan& b : second) {
          Plan q = b;
          q.now.insert(q.now.begin(), a.now.begin(), a.now.end());
          out.push_back(std::move(q));
        }
      }
      FormulaPtr tail = c->kids[1];
      for (const Plan& a : first) {
        if (a.ends) continue;
        Plan q;
        q.now = a.now;
        q.unit = a.unit;
        std::vector<Rest> head_rest = a.rest;
        q.rest.push_back([head_rest, tail](const State& s) {
          return f_chop(fold_rest(head_rest, s), tail);
        });
        out.push_back(std::move(q));
      }
      return out;
    }
    case FormulaKind::ChopStar: {
      std::vector<Plan> out{end_plan()};
      for (const Plan& p : decompose(c->kids[0], cfg)) {
        if (p.ends) continue;  // chunks are non-empty
        Plan q;
        q.now = p.now;
        q.unit = p.unit;
        std::vector<Rest> chunk_rest = p.rest;
        q.rest.push_back([chunk_rest, c](const State& s) {
          return f_chop(fold_rest(chunk_rest, s), c);
        });
        out.push_back(std::move(q));
      }
      return out;
    }
    case FormulaKind::Not: {
      const FormulaPtr& g = c->kids[0];
      if (g->kind == FormulaKind::Empty) return dec_one(f_more(), cfg);
      if (g->kind == FormulaKind::More) return dec_one(f_empty(), cfg);
      not_executable("negation of a temporal formula");
    }
    case FormulaKind::Or:
      not_executable("disjunction of temporal formulas");
    case FormulaKind::Implies:
    case FormulaKind::Iff:
      not_executable("a temporal conditional without a deterministic branch rule");
    case FormulaKind::Exists:
      not_executable("an existential quantifier");
    case FormulaKind::Prev:
    case FormulaKind::WPrev:
      not_executable(
          "a previous-step operator is only executable next to an explicit skip or len(1)");
    default:
      not_executable("construct outside the executable fragment");
  }
}

void flatten_and(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
  if (f->kind == FormulaKind::And) {
    flatten_and(f->kids[0], out);
    flatten_and(f->kids[1], out);
    return;
  }
  out.push_back(f);
}

std::vector<Plan> merge2(const std::vector<Plan>& a, const std::vector<Plan>& b) {
  std::vector<Plan> out;
  for (const Plan& x : a) {
    for (const Plan& y : b) {
      if (x.ends != y.ends) continue;
      Plan q;
      q.ends = x.ends;
      q.now = x.now;
      q.now.insert(q.now.end(), y.now.begin(), y.now.end());
      q.unit = x.unit;
      q.unit.insert(q.unit.end(), y.unit.begin(), y.unit.end());
      q.rest = x.rest;
      q.rest.insert(q.rest.end(), y.rest.begin(), y.rest.end());
      out.push_back(std::move(q));
      if (out.size() > 4096) not_executable("too many alternative step decompositions");
    }
  }
  return out;
}

std::vector<Plan> decompose(const FormulaPtr& f, const EvalConfig& cfg) {
  std::vector<FormulaPtr> cs;
  flatten_and(f, cs);

  // A skip or len(1) conjunct pins the window to one unit, which makes
  // previous-state and final-state reads in sibling predicates local.
  bool unit_window = false;
  for (const auto& c : cs) {
    if (c->kind == FormulaKind::Skip ||
        (c->kind == FormulaKind::Len && c->len_n == 1)) {
      unit_window = true;
      break;
    }
  }
  if (unit_window) {
    for (auto& c : cs) {
      FormulaPtr n = pred_normal(c);
      if (n && (formula_read_mask(*n) & (kPrev | kFin)) != 0) {
        c = map_pred_exprs(n, unit_reads_expr);
      }
    }
  }

  std::vector<Plan> plans = dec_one(cs[0], cfg);
  for (std::size_t i = 1; i < cs.size(); ++i) plans = merge2(plans, dec_one(cs[i], cfg));
  std::stable_sort(plans.begin(), plans.end(),
                   [](const Plan& x, const Plan& y) { return x.ends && !y.ends; });
  return plans;
}

// ---------------------------------------------------------------------------
// Step solving
// ---------------------------------------------------------------------------

bool checks_hold(const std::vector<FormulaPtr>& checks, const Interval& one,
                 const EvalConfig& cfg) {
  for (const auto& f : checks) {
    try {
      if (!eval_formula(*f, one, cfg)) return false;
    } catch (const EvalError&) {
      return false;
    }
  }
  return true;
}

struct StepChoice {
  const State* state = nullptr;
  const Plan* plan = nullptr;
  std::size_t distinct = 0;  // number of distinct viable states in the phase
};

StepChoice solve_phase(bool ends, const std::vector<Plan>& plans,
                       const std::vector<const State*>& cand, const EvalConfig& cfg) {
  StepChoice ch;
  for (const State* s : cand) {
    Interval one({*s});
    for (const Plan& p : plans) {
      if (p.ends != ends || !checks_hold(p.now, one, cfg)) continue;
      ++ch.distinct;
      if (ch.distinct == 1) {
        ch.state = s;
        ch.plan = &p;
      }
      break;  // further plans for the same state do not add new states
    }
    if (ch.distinct > 1) break;
  }
  return ch;
}

std::string missing_var(const FormulaPtr& f, const Domain& d) {
  for (const VarName& v : free_vars(*f)) {
    if (std::find(d.vars.begin(), d.vars.end(), v) == d.vars.end()) return v.name;
  }
  return "";
}

std::string state_text(const State& s) {
  std::ostringstream os;
  bool sep = false;
  for (const VarName& v : s.vars()) {
    if (sep) os << " ";
    os << v.name << "=" << to_string(s.at(v));
    sep = true;
  }
  return os.str();
}

}  // namespace

const char* status_name(RunStatus s) {
  switch (s) {
    case RunStatus::Completed: return "completed";
    case RunStatus::LengthBound: return "length-bound";
    case RunStatus::Deadlock: return "deadlock";
    case RunStatus::Nondeterministic: return "nondeterministic";
    case RunStatus::NotExecutable: return "not-executable";
  }
  return "?";
}

const char* premise_name(UndoPremise p) {
  switch (p) {
    case UndoPremise::BadSatisfiable: return "bad-satisfiable";
    case UndoPremise::BadCommonPrefix: return "bad-common-prefix";
    case UndoPremise::BadCommonSuffix: return "bad-common-suffix";
  }
  return "?";
}

ReductionState reduce_step(const FormulaPtr& f, const std::map<VarName, Value>& known,
                           const Domain& d, const EvalConfig& cfg) {
  if (std::string v = missing_var(f, d); !v.empty()) {
    not_executable("variable " + v + " is not declared in the domain");
  }
  for (const auto& [v, val] : known) {
    if (std::find(d.vars.begin(), d.vars.end(), v) == d.vars.end()) {
      not_executable("binding for undeclared variable " + v.name);
    }
  }
  std::vector<Plan> plans = decompose(f, cfg);
  std::vector<State> all = d.all_states();
  std::vector<const State*> cand;
  for (const State& s : all) {
    bool ok = true;
    for (const auto& [v, val] : known) {
      if (s.at(v) != val) { ok = false; break; }
    }
    if (ok) cand.push_back(&s);
  }

  StepChoice end = solve_phase(true, plans, cand, cfg);
  StepChoice cont = solve_phase(false, plans, cand, cfg);
  if (end.distinct == 0 && cont.distinct == 0) {
    throw EngineError(EngineError::Kind::Contradiction,
                      "no state satisfies the step constraints");
  }

  ReductionState r;
  r.done_allowed = end.distinct > 0;
  r.more_required = end.distinct == 0;
  const StepChoice& pick = end.distinct > 0 ? end : cont;
  if (pick.distinct == 1) {
    for (const VarName& v : pick.state->vars()) r.bindings.emplace(v, pick.state->at(v));
  }
  r.now = pick.plan->now;
  if (end.distinct == 0) {
    r.carried_unit = pick.plan->unit;
    r.residual = fold_rest(pick.plan->rest, *pick.state);
  }
  return r;
}

RunResult run_forward(const FormulaPtr& f, const Domain& d, const EvalConfig& cfg,
                      std::size_t max_steps) {
  RunResult r;
  if (std::string v = missing_var(f, d); !v.empty()) {
    r.status = RunStatus::NotExecutable;
    r.detail = "variable " + v + " is not declared in the domain";
    return r;
  }
  std::vector<State> all = d.all_states();
  if (all.empty()) {
    r.status = RunStatus::Deadlock;
    r.detail = "the domain has no states";
    return r;
  }

  std::vector<State> built;
  std::vector<FormulaPtr> pending;
  FormulaPtr obligation = f;

  try {
    for (;;) {
      if (built.size() > max_steps) {
        r.status = RunStatus::LengthBound;
        r.detail = "no end state within " + std::to_string(max_steps) + " steps";
        break;
      }
      std::vector<Plan> plans = decompose(obligation, cfg);

      std::vector<const State*> cand;
      for (const State& s : all) {
        if (checks_hold(pending, Interval({s}), cfg)) cand.push_back(&s);
      }

      std::string at_step = " at step " + std::to_string(built.size());
      StepChoice end = solve_phase(true, plans, cand, cfg);
      if (end.distinct > 1) {
        r.status = RunStatus::Nondeterministic;
        r.detail = "more than one state can end the interval" + at_step;
        break;
      }
      if (end.distinct == 1) {
        built.push_back(*end.state);
        r.status = RunStatus::Completed;
        break;
      }

      StepChoice cont = solve_phase(false, plans, cand, cfg);
      if (cont.distinct == 0) {
        r.status = RunStatus::Deadlock;
        r.detail = "no state satisfies the step constraints" + at_step;
        break;
      }
      if (cont.distinct > 1) {
        r.status = RunStatus::Nondeterministic;
        r.detail = "more than one state satisfies the step constraints" + at_step;
        break;
      }

      built.push_back(*cont.state);
      std::vector<FormulaPtr> next_pending;
      for (const FormulaPtr& u : cont.plan->unit) {
        next_pending.push_back(
            map_pred_exprs(u, [&](const ExprPtr& e) { return advance_expr(e, *cont.state); }));
      }
      obligation = fold_rest(cont.plan->rest, *cont.state);
      pending = std::move(next_pending);
    }
  } catch (const EngineError& e) {
    r.status = RunStatus::NotExecutable;
    r.detail = e.what();
  } catch (const EvalError& e) {
    r.status = RunStatus::NotExecutable;
    r.detail = std::string("evaluation error: ") + e.what();
  }

  if (!built.empty()) {
    r.trace = Interval(std::move(built));
    r.steps = r.trace->length();
  }
  if (r.status == RunStatus::Completed) {
    try {
      r.audit_ok = eval_formula(*f, *r.trace, cfg);
    } catch (const EvalError&) {
      r.audit_ok = false;
    }
    r.detail = "stopped after " + std::to_string(r.steps) +
               (r.steps == 1 ? " step; final state " : " steps; final state ") +
               state_text(r.trace->last());
  }
  return r;
}

RunResult run_backward(const FormulaPtr& f, const Domain& d, const EvalConfig& cfg,
                       std::size_t max_steps) {
  RunResult r = run_forward(reflect_formula(f), d, cfg, max_steps);
  if (r.trace) r.trace = reverse(*r.trace);
  if (r.status == RunStatus::Completed) {
    try {
      r.audit_ok = eval_formula(*f, *r.trace, cfg);
    } catch (const EvalError&) {
      r.audit_ok = false;
    }
    r.detail = "built right to left; first state " + state_text(r.trace->first());
  }
  return r;
}

FormulaPtr undo_compose(const FormulaPtr& f, unsigned k) {
  return f_chop(f_and(f, f_len(k)), f_and(reflect_formula(f), f_len(k)));
}

UndoResult run_undo(const FormulaPtr& good, const FormulaPtr& bad, unsigned k,
                    const std::vector<VarName>& tracked, const Domain& d, const EvalConfig& cfg,
                    std::size_t max_steps) {
  UndoResult u;
  RunResult g = run_forward(good, d, cfg, max_steps);
  if (g.status != RunStatus::Completed) {
    u.run = g;
    u.detail = std::string("the run of the first formula ended ") + status_name(g.status) +
               (g.detail.empty() ? "" : ": " + g.detail);
    return u;
  }
  u.good_trace = g.trace;
  const State& handoff = g.trace->last();

  // the second formula is checked as a computation from the handoff state
  FormulaPtr anchor;
  for (const VarName& v : tracked) {
    FormulaPtr eq = pred(e_eq(e_var(v), const_of(handoff.at(v))));
    anchor = anchor ? f_and(anchor, eq) : eq;
  }
  if (!anchor) anchor = f_true();
  FormulaPtr anchored = f_and(f_init(anchor), f_and(bad, f_len(k)));

  // the anchored formula pins the length to k, so bounding at k loses nothing
  Domain db = d;
  db.max_len = k;
  if (!satisfiable_bounded(anchored, db, cfg)) {
    u.failed_premise = UndoPremise::BadSatisfiable;
    u.detail = "the second formula has no length-" + std::to_string(k) +
               " model from the handoff state " + state_text(handoff);
    return u;
  }
  if (!common_prefix(anchored, tracked, db, cfg).holds) {
    u.failed_premise = UndoPremise::BadCommonPrefix;
    u.detail = "the second formula is not forward-deterministic from the handoff state";
    return u;
  }
  if (!common_suffix(anchored, tracked, db, cfg).holds) {
    u.failed_premise = UndoPremise::BadCommonSuffix;
    u.detail = "the second formula is not backward-deterministic from the handoff state";
    return u;
  }
  u.premises_ok = true;

  u.run = run_forward(f_chop(good, undo_compose(bad, k)), d, cfg, max_steps);
  std::ostringstream os;
  os << "handoff state " << state_text(handoff);
  if (u.run.status == RunStatus::Completed) {
    const State& last = u.run.trace->last();
    u.restored = true;
    for (const VarName& v : tracked) {
      if (last.at(v) != handoff.at(v)) { u.restored = false; break; }
    }
    os << "; final state " << state_text(last) << "; tracked values "
       << (u.restored ? "restored" : "NOT restored");
    std::size_t expect = g.trace->length() + 2 * static_cast<std::size_t>(k);
    if (u.run.trace->length() != expect) {
      os << "; unexpected composite length " << u.run.trace->length();
    }
  } else {
    os << "; composite run ended " << status_name(u.run.status);
    if (!u.run.detail.empty()) os << ": " << u.run.detail;
  }
  u.detail = os.str();
  return u;
}

}  // namespace itl
