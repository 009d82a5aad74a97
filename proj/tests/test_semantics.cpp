#include "doctest.h"
#include "itl/errors.hpp"
#include "itl/parser.hpp"
#include "itl/semantics.hpp"
#include "support/pools.hpp"

using namespace itl;
using namespace itl::testing;

namespace {

bool holds(const char* text, const std::vector<std::int64_t>& as) {
  SymbolTable t;
  t.sorts = {{"A", Sort::Int}};
  return eval_formula(parse_formula(text, t), interval_a(as), tiny_config());
}

}  // namespace

TEST_CASE("skip means exactly one step") {
  CHECK(holds("skip", {0, 1}));
  CHECK_FALSE(holds("skip", {0}));
  CHECK_FALSE(holds("skip", {0, 1, 0}));
  CHECK(holds("empty", {1}));
  CHECK_FALSE(holds("empty", {1, 1}));
  CHECK(holds("more", {1, 1}));
  CHECK_FALSE(holds("more", {1}));
}

TEST_CASE("predicates read the first state; temporal reads pick their position") {
  CHECK(holds("A = 0", {0, 1}));
  CHECK_FALSE(holds("A = 0", {1, 0}));
  CHECK(holds("A' = 1", {0, 1, 0}));
  CHECK(holds("fin.A = 0", {1, 1, 0}));
  CHECK(holds("prev.A = 1", {0, 1, 0}));
  CHECK_FALSE(holds("prev.A = 0", {0, 1, 0}));
}

TEST_CASE("off-interval reads fall back to the configured default") {
  EvalConfig cfg = tiny_config();
  FormulaPtr next_is = parse_formula("A' = 0");
  FormulaPtr prev_is = parse_formula("prev.A = 0");
  CHECK(eval_formula(next_is, interval_a({1}), cfg));
  CHECK(eval_formula(prev_is, interval_a({1}), cfg));

  cfg.default_int = 7;
  CHECK_FALSE(eval_formula(next_is, interval_a({1}), cfg));
  CHECK(eval_formula(parse_formula("A' = 7"), interval_a({1}), cfg));
}

TEST_CASE("chop splits the interval at a shared state") {
  CHECK(holds("A = 0 and empty ; A = 0 and skip", {0, 1}));
  CHECK(holds("skip ; skip", {0, 1, 0}));
  CHECK_FALSE(holds("skip ; skip", {0, 1}));
  CHECK(holds("A = 0 ; A = 1", {0, 0, 1, 1}));
  CHECK_FALSE(holds("A = 1 ; A = 0", {0, 0, 1}));
}

TEST_CASE("chopstar covers one-state intervals and strict chunkings") {
  CHECK(holds("skip*", {0}));
  CHECK(holds("skip*", {0, 1, 0, 1}));
  CHECK(holds("(A = 0 and skip)*", {0, 0, 0}));
  CHECK_FALSE(holds("(A = 0 and skip)*", {0, 1, 0}));
  CHECK(holds("(skip ; skip)*", {0, 1, 0}));
  CHECK_FALSE(holds("(skip ; skip)*", {0, 1, 0, 1}));
}

TEST_CASE("exists ranges over value columns of the bound variable") {
  SymbolTable t;
  FormulaPtr f = parse_formula("exists B : int . (B = 1 and box(A < 2))", t);
  CHECK(eval_formula(f, interval_a({0, 1}), tiny_config()));
  FormulaPtr g = parse_formula("exists B : int . (B = 1 and B = 0)", t);
  CHECK_FALSE(eval_formula(g, interval_a({0}), tiny_config()));
  FormulaPtr h = parse_formula("exists B : int . (B = 0 and fin.B = 1 and skip)", t);
  CHECK(eval_formula(h, interval_a({0, 0}), tiny_config()));
}

TEST_CASE("box and diamond quantify suffixes; their -i forms quantify prefixes") {
  CHECK(holds("box(A = 0)", {0, 0, 0}));
  CHECK_FALSE(holds("box(A = 0)", {0, 1, 0}));
  CHECK(holds("diamond(A = 1)", {0, 1, 0}));
  CHECK_FALSE(holds("diamond(A = 1)", {0, 0}));
  CHECK(holds("boxi(fin.A <= 1)", {0, 1, 0}));
  CHECK_FALSE(holds("boxi(fin.A = 0)", {0, 1, 0}));
  CHECK(holds("diamondi(fin.A = 1)", {0, 1, 0}));
  CHECK_FALSE(holds("diamondi(A = 1)", {0, 1, 0}));
  CHECK(holds("boxa(A <= 1)", {0, 1, 0}));
  CHECK(holds("diamonda(A = 1 and empty)", {0, 1, 0}));
}

TEST_CASE("assignment forms target their stated positions") {
  CHECK(holds("A := 1", {0, 1}));
  CHECK(holds("A := 1", {0, 1, 0}));
  CHECK_FALSE(holds("A := 1", {0, 0, 1}));
  CHECK(holds("A <- 1", {0, 0, 1}));
  CHECK(holds("A =: 1", {0, 1, 0}));
  CHECK(holds("A gets A + 1", {0, 1}));
  CHECK_FALSE(holds("A gets A + 1", {0, 1, 1}));
  CHECK(holds("A gets A + 1", {0}));
}

TEST_CASE("len, fin, init, halt, keep, initonly, while") {
  CHECK(holds("len(2)", {0, 1, 0}));
  CHECK_FALSE(holds("len(2)", {0, 1}));
  CHECK(holds("fin(A = 1)", {0, 0, 1}));
  CHECK(holds("init(A = 0)", {0, 1, 1}));
  CHECK(holds("halt(A = 1)", {0, 0, 1}));
  CHECK_FALSE(holds("halt(A = 1)", {0, 1, 1}));
  CHECK(holds("keep(A' = A)", {1, 1, 1}));
  CHECK_FALSE(holds("keep(A' = A)", {1, 1, 0}));
  CHECK(holds("initonly(fin.A = 1)", {1, 0, 0}));
  CHECK_FALSE(holds("initonly(fin.A = 1)", {1, 0, 1}));
  CHECK_FALSE(holds("initonly(A = 1)", {1, 0, 0}));
  CHECK(holds("while A < 2 do (skip and A := A + 1)", {0, 1, 2}));
  CHECK_FALSE(holds("while A < 2 do (skip and A := A + 1)", {0, 1}));
  CHECK(holds("while A < 0 do skip", {1}));
}

TEST_CASE("if chooses by the current state") {
  CHECK(holds("if A = 0 then skip else empty", {0, 1}));
  CHECK(holds("if A = 1 then skip else empty", {0}));
  CHECK_FALSE(holds("if A = 1 then skip else empty", {0, 1}));
}

TEST_CASE("every derived construct agrees with its kernel image") {
  Domain d = ref_domain();
  EvalConfig cfg = ref_config();
  for (const FormulaPtr& f : full_pool()) {
    ValidityResult r = equivalent_bounded(f, desugar(f), d, cfg);
    CAPTURE(print(f));
    CHECK(r.valid);
  }
}

TEST_CASE("bounded satisfiability returns the first witness in enumeration order") {
  Domain d = tiny_domain();
  EvalConfig cfg = tiny_config();
  auto w = satisfiable_bounded(parse_formula("A = 1 and skip"), d, cfg);
  REQUIRE(w.has_value());
  CHECK(w->length() == 1);
  CHECK(w->first() == state_a(1));

  CHECK_FALSE(satisfiable_bounded(parse_formula("A = 0 and A = 1"), d, cfg).has_value());

  ValidityResult v = valid_bounded(parse_formula("box(A = 0) => fin(A = 0)"), d, cfg);
  CHECK(v.valid);

  v = valid_bounded(parse_formula("fin(A = 0) => box(A = 0)"), d, cfg);
  CHECK_FALSE(v.valid);
  REQUIRE(v.counterexample.has_value());
  CHECK(eval_formula(parse_formula("fin(A = 0) and not box(A = 0)"), *v.counterexample, cfg));
}

TEST_CASE("evaluation errors carry their kind") {
  EvalConfig cfg = tiny_config();
  try {
    eval_formula(parse_formula("B = 0"), interval_a({0}), cfg);
    FAIL("expected an unknown-variable error");
  } catch (const EvalError& e) {
    CHECK(e.kind == EvalError::Kind::UnknownVariable);
  }

  try {
    eval_formula(parse_formula("A div 0 = 0"), interval_a({0}), cfg);
    FAIL("expected a division error");
  } catch (const EvalError& e) {
    CHECK(e.kind == EvalError::Kind::DivisionByZero);
  }
}
