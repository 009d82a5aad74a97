#include "itl/laws.hpp"

#include <sstream>

#include "itl/parser.hpp"

namespace itl {

namespace {

// Deterministic instantiation pools over A : int and Q : bool.

const VarName kA = VarName{"A", Sort::Int};
const VarName kQ = VarName{"Q", Sort::Bool};

std::vector<ExprPtr> int_expr_pool() {
  return {
      e_int(0),
      e_int(1),
      e_int(2),
      e_var(kA),
      e_next(kA),
      e_fin(kA),
      e_prev(kA),
      e_add(e_var(kA), e_int(1)),
      e_sub(e_int(2), e_var(kA)),
      e_mul(e_var(kA), e_int(2)),
      e_div(e_var(kA), e_int(2)),
      e_mod(e_add(e_var(kA), e_int(1)), e_int(2)),
      e_add(e_fin(kA), e_var(kA)),
      e_sub(e_next(kA), e_prev(kA)),
  };
}

std::vector<ExprPtr> bool_expr_pool() {
  return {
      e_bool(false),
      e_bool(true),
      e_var(kQ),
      e_next(kQ),
      e_fin(kQ),
      e_prev(kQ),
      e_eq(e_var(kA), e_int(0)),
      e_lt(e_var(kA), e_int(2)),
      e_le(e_fin(kA), e_var(kA)),
      e_eq(e_next(kA), e_add(e_var(kA), e_int(1))),
      e_ge(e_prev(kA), e_int(1)),
      e_apply("and", {e_var(kQ), e_lt(e_var(kA), e_int(2))}),
      e_apply("not", {e_fin(kQ)}),
      e_eq(e_var(kQ), e_fin(kQ)),
  };
}

// Closed under one level of kernel and derived constructors over a handful of
// atoms; enough shapes to make every law's instantiation non-trivial.
std::vector<FormulaPtr> formula_pool() {
  std::vector<FormulaPtr> atoms = {
      f_true(),
      assign(kA, e_int(0)),
      pred(e_lt(e_var(kA), e_int(2))),
      pred(e_var(kQ)),
      pred(e_eq(e_next(kA), e_add(e_var(kA), e_int(1)))),
      pred(e_eq(e_fin(kA), e_int(1))),
      pred(e_eq(e_prev(kA), e_var(kA))),
      f_skip(),
      f_empty(),
      f_len(2),
  };
  std::vector<FormulaPtr> pool = atoms;
  std::size_t n = atoms.size();
  for (std::size_t i = 0; i < n; ++i) {
    pool.push_back(f_not(atoms[i]));
    pool.push_back(f_star(atoms[i]));
    pool.push_back(f_and(atoms[i], atoms[(i + 3) % n]));
    pool.push_back(f_chop(atoms[i], atoms[(i + 5) % n]));
    pool.push_back(f_or(atoms[i], atoms[(i + 7) % n]));
    pool.push_back(f_exists(kA, atoms[i]));
  }
  std::size_t l2 = pool.size();
  for (std::size_t i = n; i < l2; i += 7) {
    pool.push_back(f_not(pool[i]));
    pool.push_back(f_chop(pool[i], atoms[i % n]));
    pool.push_back(f_and(atoms[(i + 1) % n], pool[i]));
    pool.push_back(f_star(pool[i]));
    pool.push_back(f_exists(kA, pool[i]));
  }
  pool.push_back(f_box(pred(e_eq(e_var(kA), e_int(0)))));
  pool.push_back(f_diamond(assign(kA, e_int(1))));
  pool.push_back(gets(kA, e_add(e_var(kA), e_int(1))));
  pool.push_back(f_next(pred(e_var(kQ))));
  pool.push_back(f_fin(assign(kA, e_int(2))));
  pool.push_back(f_init(pred(e_var(kQ))));
  pool.push_back(f_halt(assign(kA, e_int(2))));
  pool.push_back(f_keep(temp_assign(kA, e_add(e_var(kA), e_int(1)))));
  pool.push_back(f_while(pred(e_lt(e_var(kA), e_int(2))),
                         f_and(unit_assign(kA, e_add(e_var(kA), e_int(1))), f_skip())));
  pool.push_back(f_if(pred(e_var(kQ)), f_skip(), f_empty()));
  return pool;
}

class Suite {
 public:
  Suite(const Domain& d, const EvalConfig& cfg) : d_(d), cfg_(cfg), pool_(formula_pool()) {}

  std::vector<LawResult> results;

  void law(const std::string& id, const std::string& statement,
           const std::function<void(LawResult&)>& body) {
    LawResult r;
    r.id = id;
    r.statement = statement;
    body(r);
    results.push_back(std::move(r));
  }

  // reflect(lhs) must equal expected, and expected must hold on an interval
  // exactly when lhs holds on its reversal.
  void instance(LawResult& r, const FormulaPtr& lhs, const FormulaPtr& expected) {
    if (!r.passed) return;
    ++r.instances;
    FormulaPtr got = reflect_formula(lhs);
    if (!equal(got, expected)) {
      r.passed = false;
      r.failure = "rewrite of " + print(lhs) + " gave " + print(got) + ", expected " + print(expected);
      return;
    }
    for_each_interval(d_, [&](const Interval& in) {
      bool a = eval_formula(*expected, in, cfg_);
      bool b = eval_formula(*lhs, reverse(in), cfg_);
      if (a != b) {
        r.passed = false;
        r.failure = "semantic mismatch for " + print(lhs);
        return false;
      }
      return true;
    });
  }

  void expr_instance(LawResult& r, const ExprPtr& lhs, const ExprPtr& expected) {
    if (!r.passed) return;
    ++r.instances;
    ExprPtr got = reflect_expr(lhs);
    if (!equal(got, expected)) {
      r.passed = false;
      r.failure = "rewrite of " + print(lhs) + " gave " + print(got) + ", expected " + print(expected);
      return;
    }
    for_each_interval(d_, [&](const Interval& in) {
      Value a = eval_expr(*expected, in, cfg_);
      Value b = eval_expr(*lhs, reverse(in), cfg_);
      if (!(a == b)) {
        r.passed = false;
        r.failure = "semantic mismatch for " + print(lhs);
        return false;
      }
      return true;
    });
  }

  void validity(LawResult& r, const FormulaPtr& f) {
    if (!r.passed) return;
    ++r.instances;
    ValidityResult vr = valid_bounded(f, d_, cfg_);
    if (!vr.valid) {
      r.passed = false;
      r.failure = "not valid in the bound: " + print(f);
    }
  }

  const Domain& d_;
  const EvalConfig& cfg_;
  std::vector<FormulaPtr> pool_;
};

}  // namespace

std::vector<LawResult> run_law_suite(const Domain& d, const EvalConfig& cfg) {
  Suite s(d, cfg);
  const auto& pool = s.pool_;
  auto ints = int_expr_pool();
  auto bools = bool_expr_pool();

  s.law("R0", "reflect(true) = true",
        [&](LawResult& r) { s.instance(r, f_true(), f_true()); });

  s.law("R1", "reflect(not f) = not reflect(f)", [&](LawResult& r) {
    for (const auto& f : pool) s.instance(r, f_not(f), f_not(reflect_formula(f)));
  });

  s.law("R2", "reflect(f and g) = reflect(f) and reflect(g)", [&](LawResult& r) {
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const auto& f = pool[i];
      const auto& g = pool[(i * 11 + 4) % pool.size()];
      s.instance(r, f_and(f, g), f_and(reflect_formula(f), reflect_formula(g)));
    }
  });

  s.law("R3", "reflect(skip) = skip",
        [&](LawResult& r) { s.instance(r, f_skip(), f_skip()); });

  s.law("R4", "reflect(f;g) = reflect(g);reflect(f)", [&](LawResult& r) {
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const auto& f = pool[i];
      const auto& g = pool[(i * 13 + 2) % pool.size()];
      s.instance(r, f_chop(f, g), f_chop(reflect_formula(g), reflect_formula(f)));
    }
  });

  s.law("R5", "reflect(f*) = reflect(f)*", [&](LawResult& r) {
    for (const auto& f : pool) s.instance(r, f_star(f), f_star(reflect_formula(f)));
  });

  s.law("R6", "reflect(h(e1..en)) = h(reflect(e1)..reflect(en))", [&](LawResult& r) {
    for (const auto& b : bools) {
      s.instance(r, pred(b), pred(reflect_expr(b)));
    }
  });

  s.law("R7", "reflect(exists V. f) = exists V. reflect(f)", [&](LawResult& r) {
    for (const auto& f : pool) {
      s.instance(r, f_exists(kA, f), f_exists(kA, reflect_formula(f)));
      s.instance(r, f_exists(kQ, f), f_exists(kQ, reflect_formula(f)));
    }
  });

  s.law("ER0", "reflect(c) = c for constants", [&](LawResult& r) {
    for (const auto& e : {e_int(0), e_int(2), e_bool(true), e_bool(false)})
      s.expr_instance(r, e, e);
  });

  s.law("ER1", "reflect(V) = fin V", [&](LawResult& r) {
    s.expr_instance(r, e_var(kA), e_fin(kA));
    s.expr_instance(r, e_var(kQ), e_fin(kQ));
  });

  s.law("ER2", "reflect(fin V) = V", [&](LawResult& r) {
    s.expr_instance(r, e_fin(kA), e_var(kA));
    s.expr_instance(r, e_fin(kQ), e_var(kQ));
  });

  s.law("ER3", "reflect(h(e1..en)) applies argumentwise", [&](LawResult& r) {
    for (const auto& e : ints)
      if (e->kind == ExprKind::Apply) s.expr_instance(r, e, reflect_expr(e));
    for (const auto& e : bools)
      if (e->kind == ExprKind::Apply) s.expr_instance(r, e, reflect_expr(e));
  });

  s.law("ER4", "reflect(next V) = prev V", [&](LawResult& r) {
    s.expr_instance(r, e_next(kA), e_prev(kA));
    s.expr_instance(r, e_next(kQ), e_prev(kQ));
  });

  s.law("ER5", "reflect(prev V) = next V", [&](LawResult& r) {
    s.expr_instance(r, e_prev(kA), e_next(kA));
    s.expr_instance(r, e_prev(kQ), e_next(kQ));
  });

  struct Unary {
    const char* id;
    const char* stmt;
    FormulaPtr (*make)(FormulaPtr);
    FormulaPtr (*dual)(FormulaPtr);
    bool reflect_inner;
  };
  const Unary duals[] = {
      {"D-NEXT", "reflect(next f) = prev reflect(f)", f_next, f_prev, true},
      {"D-PREV", "reflect(prev f) = next reflect(f)", f_prev, f_next, true},
      {"D-WNEXT", "reflect(wnext f) = wprev reflect(f)", f_wnext, f_wprev, true},
      {"D-WPREV", "reflect(wprev f) = wnext reflect(f)", f_wprev, f_wnext, true},
      {"D-DIAMOND", "reflect(diamond f) = diamondi reflect(f)", f_diamond, f_diamond_i, true},
      {"D-DIAMOND-I", "reflect(diamondi f) = diamond reflect(f)", f_diamond_i, f_diamond, true},
      {"D-BOX", "reflect(box f) = boxi reflect(f)", f_box, f_box_i, true},
      {"D-BOX-I", "reflect(boxi f) = box reflect(f)", f_box_i, f_box, true},
      {"D-DIAMOND-A", "reflect(diamonda f) = diamonda reflect(f)", f_diamond_a, f_diamond_a, true},
      {"D-BOX-A", "reflect(boxa f) = boxa reflect(f)", f_box_a, f_box_a, true},
  };
  for (const auto& u : duals) {
    s.law(u.id, u.stmt, [&](LawResult& r) {
      for (const auto& f : pool) s.instance(r, u.make(f), u.dual(reflect_formula(f)));
    });
  }

  s.law("D-EMPTY", "reflect(empty) = empty",
        [&](LawResult& r) { s.instance(r, f_empty(), f_empty()); });
  s.law("D-MORE", "reflect(more) = more",
        [&](LawResult& r) { s.instance(r, f_more(), f_more()); });

  s.law("P-ASSIGN", "reflect(V = e) = (V <- reflect(e))", [&](LawResult& r) {
    for (const auto& e : ints) s.instance(r, assign(kA, e), temp_assign(kA, reflect_expr(e)));
  });

  s.law("P-TEMP-ASSIGN", "reflect(V <- e) = (V = reflect(e))", [&](LawResult& r) {
    for (const auto& e : ints) s.instance(r, temp_assign(kA, e), assign(kA, reflect_expr(e)));
  });

  s.law("P-UNIT-ASSIGN", "reflect(V := e) = (V =: reflect(e))", [&](LawResult& r) {
    for (const auto& e : ints) s.instance(r, unit_assign(kA, e), past_assign(kA, reflect_expr(e)));
  });

  s.law("P-PAST-ASSIGN", "reflect(V =: e) = (V := reflect(e))", [&](LawResult& r) {
    for (const auto& e : ints) s.instance(r, past_assign(kA, e), unit_assign(kA, reflect_expr(e)));
  });

  s.law("P-GETS", "reflect(V gets e) = boxa(skip => V = reflect(e))", [&](LawResult& r) {
    for (const auto& e : ints)
      s.instance(r, gets(kA, e), f_box_a(f_implies(f_skip(), assign(kA, reflect_expr(e)))));
  });

  s.law("P-IF", "reflect(if f0 then f1 else f2) applies to all three operands", [&](LawResult& r) {
    for (std::size_t i = 0; i < 10; ++i) {
      const auto& c = pool[(i * 3 + 1) % pool.size()];
      const auto& t = pool[(i * 7 + 2) % pool.size()];
      const auto& e = pool[(i * 11 + 5) % pool.size()];
      s.instance(r, f_if(c, t, e),
                 f_if(reflect_formula(c), reflect_formula(t), reflect_formula(e)));
    }
  });

  s.law("P-LEN", "reflect(len(n)) = len(n)", [&](LawResult& r) {
    for (unsigned n = 0; n <= 3; ++n) s.instance(r, f_len(n), f_len(n));
  });

  s.law("P-INIT", "reflect(init f) = fin f", [&](LawResult& r) {
    for (const auto& f : pool) s.instance(r, f_init(f), f_fin(f));
  });

  s.law("P-FIN", "reflect(fin f) = init f", [&](LawResult& r) {
    for (const auto& f : pool) s.instance(r, f_fin(f), f_init(f));
  });

  s.law("P-HALT", "reflect(halt f) = initonly reflect(f)", [&](LawResult& r) {
    for (const auto& f : pool) s.instance(r, f_halt(f), f_initonly(reflect_formula(f)));
  });

  s.law("P-INITONLY", "reflect(initonly f) = halt reflect(f)", [&](LawResult& r) {
    for (const auto& f : pool) s.instance(r, f_initonly(f), f_halt(reflect_formula(f)));
  });

  s.law("P-KEEP", "reflect(keep f) = keep reflect(f)", [&](LawResult& r) {
    for (const auto& f : pool) s.instance(r, f_keep(f), f_keep(reflect_formula(f)));
  });

  s.law("P-WHILE", "reflect(while f0 do f1) = (reflect(f0) and reflect(f1))* and init(not f0)",
        [&](LawResult& r) {
          std::vector<FormulaPtr> conds = {assign(kA, e_int(0)), pred(e_lt(e_var(kA), e_int(2))),
                                           pred(e_var(kQ))};
          for (const auto& c : conds) {
            for (const auto& b : pool) {
              s.instance(r, f_while(c, b),
                         f_and(f_star(f_and(reflect_formula(c), reflect_formula(b))),
                               f_init(f_not(c))));
            }
          }
        });

  s.law("L-EMPTY-FIN", "empty => fin V = V", [&](LawResult& r) {
    for (const auto& v : d.vars)
      s.validity(r, f_implies(f_empty(), pred(e_eq(e_fin(v), e_var(v)))));
  });

  s.law("L-SKIP-FIN", "skip => fin V = next V", [&](LawResult& r) {
    for (const auto& v : d.vars)
      s.validity(r, f_implies(f_skip(), pred(e_eq(e_fin(v), e_next(v)))));
  });

  s.law("L-SKIP-PREV", "skip => prev V = V", [&](LawResult& r) {
    for (const auto& v : d.vars)
      s.validity(r, f_implies(f_skip(), pred(e_eq(e_prev(v), e_var(v)))));
  });

  // Consistency of the two rewrite routes: reflecting the kernel translation
  // agrees with translating the reflection.
  s.law("X-ROUTES", "desugar(reflect(f)) equivalent to reflect(desugar(f))", [&](LawResult& r) {
    for (const auto& f : pool) {
      if (!r.passed) return;
      ++r.instances;
      ValidityResult vr =
          equivalent_bounded(desugar(reflect_formula(f)), reflect_formula(desugar(f)), d, cfg);
      if (!vr.valid) {
        r.passed = false;
        r.failure = "routes disagree for " + print(f);
      }
    }
  });

  return s.results;
}

bool all_passed(const std::vector<LawResult>& results) {
  for (const auto& r : results) {
    if (!r.passed) return false;
  }
  return true;
}

}  // namespace itl
