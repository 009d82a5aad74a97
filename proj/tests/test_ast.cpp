#include "doctest.h"
#include "itl/ast.hpp"
#include "itl/parser.hpp"
#include "support/pools.hpp"

using namespace itl;
using namespace itl::testing;

TEST_CASE("structural equality is syntactic") {
  FormulaPtr a = f_and(pred(e_eq(e_var(var_a()), e_int(0))), f_skip());
  FormulaPtr b = f_and(pred(e_eq(e_var(var_a()), e_int(0))), f_skip());
  FormulaPtr c = f_and(f_skip(), pred(e_eq(e_var(var_a()), e_int(0))));
  CHECK(equal(a, b));
  CHECK_FALSE(equal(a, c));
  CHECK_FALSE(equal(f_empty(), f_more()));
  CHECK(equal(e_add(e_var(var_a()), e_int(1)), e_add(e_var(var_a()), e_int(1))));
  CHECK_FALSE(equal(e_var(var_a()), e_fin(var_a())));
}

TEST_CASE("read masks report which states an expression touches") {
  VarName a = var_a();
  CHECK(read_mask(*e_int(3)) == 0);
  CHECK(read_mask(*e_var(a)) == reads::kVar);
  CHECK(read_mask(*e_next(a)) == reads::kNext);
  CHECK(read_mask(*e_fin(a)) == reads::kFin);
  CHECK(read_mask(*e_prev(a)) == reads::kPrev);
  CHECK(read_mask(*e_add(e_var(a), e_next(a))) == (reads::kVar | reads::kNext));
  CHECK(read_mask(*e_eq(e_fin(a), e_prev(a))) == (reads::kFin | reads::kPrev));
}

TEST_CASE("formula read mask covers assignment sugar") {
  VarName a = var_a();
  CHECK(formula_read_mask(*assign(a, e_int(1))) == reads::kVar);
  CHECK((formula_read_mask(*unit_assign(a, e_var(a))) & reads::kNext) != 0);
  CHECK((formula_read_mask(*temp_assign(a, e_var(a))) & reads::kFin) != 0);
  CHECK((formula_read_mask(*past_assign(a, e_var(a))) & reads::kPrev) != 0);
}

TEST_CASE("free variables: Exists binds, assignment targets occur") {
  VarName a = var_a();
  VarName q = var_q();
  FormulaPtr f = f_exists(a, f_and(pred(e_eq(e_var(a), e_int(0))), pred(e_var(q))));
  CHECK(free_vars(*f) == std::set<VarName>{q});
  CHECK(free_vars(*gets(a, e_add(e_var(a), e_int(1)))) == std::set<VarName>{a});
  CHECK(free_vars(*f_skip()).empty());
  CHECK(free_vars(*e_eq(e_next(a), e_var(a))) == std::set<VarName>{a});
}

TEST_CASE("state formulas read only the first state") {
  VarName a = var_a();
  VarName q = var_q();
  CHECK(is_state_formula(*f_and(pred(e_eq(e_var(a), e_int(0))), pred(e_var(q)))));
  CHECK(is_state_formula(*f_or(assign(a, e_int(1)), f_not(pred(e_var(q))))));
  CHECK_FALSE(is_state_formula(*pred(e_eq(e_next(a), e_var(a)))));
  CHECK_FALSE(is_state_formula(*f_skip()));
  CHECK_FALSE(is_state_formula(*f_box(pred(e_var(q)))));
  CHECK_FALSE(is_state_formula(*temp_assign(a, e_int(0))));
}

TEST_CASE("sort checking rejects cross-sort operations") {
  VarName a = var_a();
  VarName q = var_q();
  CHECK(well_sorted(*pred(e_eq(e_var(a), e_int(0)))));
  CHECK(well_sorted(*pred(e_eq(e_var(q), e_bool(true)))));

  FormulaPtr bad = pred(e_eq(e_var(a), e_var(q)));
  CHECK_FALSE(well_sorted(*bad));
  CHECK(sort_problem(*bad).has_value());

  FormulaPtr bad_add = pred(e_lt(e_add(e_var(q), e_int(1)), e_int(2)));
  CHECK_FALSE(well_sorted(*bad_add));

  VarName a_as_bool{"A", Sort::Bool};
  FormulaPtr clash = f_and(pred(e_eq(e_var(a), e_int(0))), pred(e_var(a_as_bool)));
  CHECK_FALSE(well_sorted(*clash));
}

TEST_CASE("desugar lands in the kernel fragment") {
  for (const FormulaPtr& f : full_pool()) {
    FormulaPtr k = desugar(f);
    CAPTURE(print(f));
    CHECK(is_kernel(*k));
  }
}

TEST_CASE("desugar leaves kernel formulas alone") {
  for (const FormulaPtr& f : kernel_pool()) {
    if (!is_kernel(*f)) continue;
    CHECK(equal(desugar(f), f));
  }
}

TEST_CASE("desugar preserves free variables") {
  for (const FormulaPtr& f : full_pool()) {
    CAPTURE(print(f));
    CHECK(free_vars(*desugar(f)) == free_vars(*f));
  }
}
