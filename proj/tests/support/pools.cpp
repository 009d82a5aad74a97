#include "support/pools.hpp"

namespace itl::testing {

VarName var_a() { return VarName{"A", Sort::Int}; }
VarName var_q() { return VarName{"Q", Sort::Bool}; }

Domain ref_domain() {
  Domain d;
  d.int_values = {0, 1, 2};
  d.vars = {var_a(), var_q()};
  d.max_len = 3;
  return d;
}

EvalConfig ref_config() {
  EvalConfig cfg;
  cfg.domain = ref_domain();
  return cfg;
}

Domain tiny_domain() {
  Domain d;
  d.int_values = {0, 1};
  d.vars = {var_a()};
  d.max_len = 4;
  return d;
}

EvalConfig tiny_config() {
  EvalConfig cfg;
  cfg.domain = tiny_domain();
  return cfg;
}

State state_aq(std::int64_t a, bool q) {
  static UniversePtr u = make_universe({var_a(), var_q()});
  return State(u, {Value::of_int(a), Value::of_bool(q)});
}

State state_a(std::int64_t a) {
  static UniversePtr u = make_universe({var_a()});
  return State(u, {Value::of_int(a)});
}

Interval interval_a(const std::vector<std::int64_t>& as) {
  std::vector<State> sts;
  for (std::int64_t a : as) sts.push_back(state_a(a));
  return Interval(std::move(sts));
}

std::vector<FormulaPtr> atom_pool() {
  return {
      pred(e_eq(e_var(var_a()), e_int(0))),
      pred(e_lt(e_var(var_a()), e_int(2))),
      pred(e_var(var_q())),
      f_skip(),
      f_empty(),
  };
}

std::vector<FormulaPtr> kernel_pool() {
  std::vector<FormulaPtr> l0 = atom_pool();
  l0.push_back(f_true());

  // depth 2: every kernel constructor over the atoms
  std::vector<FormulaPtr> l1;
  std::size_t n0 = l0.size();
  for (std::size_t i = 0; i < n0; ++i) {
    l1.push_back(f_not(l0[i]));
    l1.push_back(f_star(l0[i]));
    l1.push_back(f_exists(var_a(), l0[i]));
    l1.push_back(f_and(l0[i], l0[(i + 1) % n0]));
    l1.push_back(f_and(l0[i], l0[(i + 3) % n0]));
    l1.push_back(f_chop(l0[i], l0[(i + 2) % n0]));
    l1.push_back(f_chop(l0[i], l0[(i + 4) % n0]));
  }

  // depth 3: a deterministic sample; Exists only over Exists-free operands
  // to keep the quantifier enumeration shallow
  std::vector<FormulaPtr> l2;
  std::size_t n1 = l1.size();
  for (std::size_t i = 0; i < n1; i += 3) {
    l2.push_back(f_not(l1[i]));
    l2.push_back(f_star(l1[(i + 1) % n1]));
    l2.push_back(f_and(l1[i], l0[i % n0]));
    l2.push_back(f_chop(l1[(i + 2) % n1], l0[(i + 1) % n0]));
    l2.push_back(f_chop(l0[i % n0], l1[i]));
    if (i % 9 == 0) l2.push_back(f_exists(var_a(), f_and(l0[i % n0], l0[(i + 2) % n0])));
    if (i % 9 == 3) l2.push_back(f_exists(var_q(), l1[(i + 4) % n1]));
  }

  std::vector<FormulaPtr> pool = l0;
  pool.insert(pool.end(), l1.begin(), l1.end());
  pool.insert(pool.end(), l2.begin(), l2.end());
  return pool;
}

std::vector<FormulaPtr> derived_pool() {
  VarName a = var_a();
  VarName q = var_q();
  FormulaPtr a0 = pred(e_eq(e_var(a), e_int(0)));
  FormulaPtr a1 = pred(e_eq(e_var(a), e_int(1)));
  FormulaPtr a2 = pred(e_eq(e_var(a), e_int(2)));
  FormulaPtr alt2 = pred(e_lt(e_var(a), e_int(2)));
  FormulaPtr qq = pred(e_var(q));

  return {
      f_or(a0, qq),
      f_or(a0, a1),
      f_implies(alt2, qq),
      f_iff(qq, a0),
      f_next(a0),
      f_wnext(a0),
      f_prev(qq),
      f_wprev(a1),
      f_diamond(a0),
      f_box(alt2),
      f_diamond_i(qq),
      f_box_i(a0),
      f_diamond_a(a1),
      f_box_a(alt2),
      f_empty(),
      f_more(),
      assign(a, e_int(1)),
      unit_assign(a, e_add(e_var(a), e_int(1))),
      temp_assign(a, e_int(2)),
      past_assign(a, e_var(a)),
      gets(a, e_add(e_var(a), e_int(1))),
      f_if(qq, f_skip(), f_empty()),
      f_len(2),
      f_fin(a0),
      f_init(qq),
      f_halt(a2),
      f_keep(pred(e_eq(e_next(a), e_var(a)))),
      f_initonly(a0),
      f_while(alt2, f_and(f_skip(), unit_assign(a, e_add(e_var(a), e_int(1))))),
      pred(e_eq(e_next(a), e_add(e_var(a), e_int(1)))),
      pred(e_eq(e_fin(a), e_int(0))),
      pred(e_eq(e_prev(a), e_var(a))),
      f_box(f_implies(qq, f_fin(a0))),
      f_chop(gets(a, e_add(e_var(a), e_int(1))), f_empty()),
      f_next(f_next(qq)),
      f_fin(f_and(a0, qq)),
      f_not(f_diamond(a0)),
      f_and(f_box_i(alt2), f_len(2)),
      f_wprev(f_box(a0)),
      f_halt(f_and(a0, qq)),
  };
}

std::vector<FormulaPtr> full_pool() {
  std::vector<FormulaPtr> pool = kernel_pool();
  std::vector<FormulaPtr> d = derived_pool();
  pool.insert(pool.end(), d.begin(), d.end());
  return pool;
}

std::vector<FormulaPtr> state_pool() {
  VarName a = var_a();
  VarName q = var_q();
  FormulaPtr qq = pred(e_var(q));
  std::vector<FormulaPtr> pool;
  for (int v = 0; v <= 2; ++v) {
    FormulaPtr av = pred(e_eq(e_var(a), e_int(v)));
    pool.push_back(av);
    pool.push_back(f_and(av, qq));
    pool.push_back(f_and(av, f_not(qq)));
  }
  pool.push_back(f_and(pred(e_lt(e_var(a), e_int(1))), qq));
  pool.push_back(f_and(pred(e_ge(e_var(a), e_int(2))), f_not(qq)));
  return pool;
}

}  // namespace itl::testing
