#include "doctest.h"
#include "itl/laws.hpp"
#include "itl/parser.hpp"
#include "itl/reflect.hpp"
#include "support/pools.hpp"

using namespace itl;
using namespace itl::testing;

namespace {

FormulaPtr a_is(int v) { return pred(e_eq(e_var(var_a()), e_int(v))); }

}  // namespace

TEST_CASE("expression reversal swaps first with last and next with previous") {
  VarName a = var_a();
  CHECK(equal(reflect_expr(e_var(a)), e_fin(a)));
  CHECK(equal(reflect_expr(e_fin(a)), e_var(a)));
  CHECK(equal(reflect_expr(e_next(a)), e_prev(a)));
  CHECK(equal(reflect_expr(e_prev(a)), e_next(a)));
  CHECK(equal(reflect_expr(e_int(3)), e_int(3)));
  CHECK(equal(reflect_expr(e_add(e_var(a), e_next(a))), e_add(e_fin(a), e_prev(a))));
}

TEST_CASE("chop reverses operand order") {
  FormulaPtr f = f_chop(f_skip(), a_is(0));
  FormulaPtr expected = f_chop(pred(e_eq(e_fin(var_a()), e_int(0))), f_skip());
  CHECK(equal(reflect_formula(f), expected));
}

TEST_CASE("reversal maps each construct to its mirror") {
  VarName a = var_a();
  FormulaPtr w = a_is(1);

  CHECK(equal(reflect_formula(f_skip()), f_skip()));
  CHECK(equal(reflect_formula(f_empty()), f_empty()));
  CHECK(equal(reflect_formula(f_len(2)), f_len(2)));
  CHECK(equal(reflect_formula(f_next(w)), f_prev(reflect_formula(w))));
  CHECK(equal(reflect_formula(f_wnext(w)), f_wprev(reflect_formula(w))));
  CHECK(equal(reflect_formula(f_diamond(w)), f_diamond_i(reflect_formula(w))));
  CHECK(equal(reflect_formula(f_box(w)), f_box_i(reflect_formula(w))));
  CHECK(equal(reflect_formula(f_diamond_a(w)), f_diamond_a(reflect_formula(w))));
  CHECK(equal(reflect_formula(f_box_a(w)), f_box_a(reflect_formula(w))));
  CHECK(equal(reflect_formula(f_star(f_skip())), f_star(f_skip())));

  // endpoint pins swap without touching the operand
  CHECK(equal(reflect_formula(f_fin(w)), f_init(w)));
  CHECK(equal(reflect_formula(f_init(w)), f_fin(w)));

  CHECK(equal(reflect_formula(f_halt(w)), f_initonly(reflect_formula(w))));
  CHECK(equal(reflect_formula(f_initonly(w)), f_halt(reflect_formula(w))));
  CHECK(equal(reflect_formula(f_keep(w)), f_keep(reflect_formula(w))));

  CHECK(equal(reflect_formula(assign(a, e_int(1))), temp_assign(a, e_int(1))));
  CHECK(equal(reflect_formula(temp_assign(a, e_var(a))), assign(a, e_fin(a))));
  CHECK(equal(reflect_formula(unit_assign(a, e_var(a))), past_assign(a, e_fin(a))));
  CHECK(equal(reflect_formula(past_assign(a, e_int(0))), unit_assign(a, e_int(0))));

  ExprPtr inc = e_add(e_var(a), e_int(1));
  CHECK(equal(reflect_formula(gets(a, inc)),
              f_box_a(f_implies(f_skip(), assign(a, e_add(e_fin(a), e_int(1)))))));

  FormulaPtr c = pred(e_lt(e_var(a), e_int(2)));
  FormulaPtr body = f_and(f_skip(), unit_assign(a, inc));
  CHECK(equal(reflect_formula(f_while(c, body)),
              f_and(f_star(f_and(reflect_formula(c), reflect_formula(body))),
                    f_init(f_not(c)))));
}

namespace {

// gets and while reflect to expanded forms, so only the other constructs
// return to the same shape after two reversals
bool mirrors_structurally(const Formula& f) {
  if (f.kind == FormulaKind::Gets || f.kind == FormulaKind::While) return false;
  for (const FormulaPtr& k : f.kids) {
    if (!mirrors_structurally(*k)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("reversing twice gives the formula back") {
  Domain d = ref_domain();
  EvalConfig cfg = ref_config();
  for (const FormulaPtr& f : full_pool()) {
    FormulaPtr twice = reflect_formula(reflect_formula(f));
    CAPTURE(print(f));
    if (mirrors_structurally(*f)) {
      CHECK(equal(twice, f));
    } else {
      CHECK(equivalent_bounded(twice, f, d, cfg).valid);
    }
  }
}

TEST_CASE("reversed formulas hold exactly on reversed intervals") {
  Domain d = ref_domain();
  EvalConfig cfg = ref_config();
  for (const FormulaPtr& f : full_pool()) {
    LawCheckResult r = check_reflection_law(f, d, cfg);
    CAPTURE(print(f));
    CHECK(r.holds);
    CHECK_FALSE(r.counterexample.has_value());
  }
}

TEST_CASE("reversal commutes with desugaring") {
  Domain d = ref_domain();
  EvalConfig cfg = ref_config();
  for (const FormulaPtr& f : derived_pool()) {
    ValidityResult r =
        equivalent_bounded(desugar(reflect_formula(f)), reflect_formula(desugar(f)), d, cfg);
    CAPTURE(print(f));
    CHECK(r.valid);
  }
}

TEST_CASE("length-forced reads collapse as the laws say") {
  LawCheckResult r = check_fixed_length_var_laws(ref_domain(), ref_config());
  CHECK(r.holds);
}

TEST_CASE("the rewrite report names the rules it applied") {
  ReflectionReport rep = reflect_formula_report(f_chop(f_skip(), gets(var_a(), e_var(var_a()))));
  CHECK(equal(rep.input, f_chop(f_skip(), gets(var_a(), e_var(var_a())))));
  CHECK(equal(rep.output, reflect_formula(rep.input)));
  REQUIRE_FALSE(rep.laws_applied.empty());
  CHECK(rep.laws_applied.front() == "R4");
}

TEST_CASE("the full law catalogue passes on the reference bound") {
  std::vector<LawResult> results = run_law_suite(ref_domain(), ref_config());
  CHECK(results.size() >= 40);
  for (const LawResult& r : results) {
    CAPTURE(r.id);
    CAPTURE(r.failure);
    CHECK(r.passed);
    CHECK(r.instances > 0);
  }
  CHECK(all_passed(results));
}
