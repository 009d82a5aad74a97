#include "itl/semantics.hpp"

#include <map>
#include <tuple>

#include "itl/errors.hpp"

namespace itl {

namespace {

// Evaluates over index windows of one interval to avoid copying subintervals.
// Chop and chop-star revisit windows, so verdicts are memoised per node.
class Evaluator {
 public:
  Evaluator(const Interval& in, const EvalConfig& cfg) : in_(in), cfg_(cfg) {}

  Value expr(const Expr& e, std::size_t lo, std::size_t hi) {
    switch (e.kind) {
      case ExprKind::ConstInt:
        return Value::of_int(e.int_val);
      case ExprKind::ConstBool:
        return Value::of_bool(e.bool_val);
      case ExprKind::Var:
        return in_.state(lo).at(e.var);
      case ExprKind::NextVar:
        if (lo == hi) return cfg_.default_value(e.var.sort);
        return in_.state(lo + 1).at(e.var);
      case ExprKind::FinVar:
        return in_.state(hi).at(e.var);
      case ExprKind::PrevVar:
        if (lo == hi) return cfg_.default_value(e.var.sort);
        return in_.state(hi - 1).at(e.var);
      case ExprKind::Apply: {
        const Operator* op = find_operator(e.op);
        if (!op)
          throw EvalError(EvalError::Kind::UnknownOperator, "unknown operator " + e.op);
        std::vector<Value> args;
        args.reserve(e.args.size());
        for (const auto& a : e.args) args.push_back(expr(*a, lo, hi));
        if (args.size() != op->params.size())
          throw EvalError(EvalError::Kind::SortMismatch, "operator " + e.op + " arity mismatch");
        if (op->poly_eq) {
          if (args[0].sort != args[1].sort)
            throw EvalError(EvalError::Kind::SortMismatch, "= applied to different sorts");
        } else {
          for (std::size_t i = 0; i < args.size(); ++i) {
            if (args[i].sort != op->params[i])
              throw EvalError(EvalError::Kind::SortMismatch,
                              "operator " + e.op + " argument sort mismatch");
          }
        }
        return op->fn(args);
      }
    }
    throw EvalError(EvalError::Kind::SortMismatch, "unhandled expression");
  }

  bool formula(const Formula& f, std::size_t lo, std::size_t hi) {
    auto key = std::make_tuple(&f, lo, hi);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool r = compute(f, lo, hi);
    memo_.emplace(key, r);
    return r;
  }

 private:
  bool compute(const Formula& f, std::size_t lo, std::size_t hi) {
    switch (f.kind) {
      case FormulaKind::True:
        return true;
      case FormulaKind::Pred: {
        Value v = expr(*f.expr, lo, hi);
        if (v.sort != Sort::Bool)
          throw EvalError(EvalError::Kind::SortMismatch, "predicate is not boolean");
        return v.as_bool();
      }
      case FormulaKind::Not:
        return !formula(*f.kids[0], lo, hi);
      case FormulaKind::And:
        return formula(*f.kids[0], lo, hi) && formula(*f.kids[1], lo, hi);
      case FormulaKind::Skip:
        return hi == lo + 1;
      case FormulaKind::Chop: {
        for (std::size_t m = lo; m <= hi; ++m) {
          if (formula(*f.kids[0], lo, m) && formula(*f.kids[1], m, hi)) return true;
        }
        return false;
      }
      case FormulaKind::ChopStar: {
        if (lo == hi) return true;
        for (std::size_t m = lo + 1; m <= hi; ++m) {
          if (formula(*f.kids[0], lo, m) && formula(f, m, hi)) return true;
        }
        return false;
      }
      case FormulaKind::Exists:
        return exists_holds(f, lo, hi);

      // Derived constructs evaluate by their defining rewrites, inline to
      // keep bounded checks fast.
      case FormulaKind::Or:
        return formula(*f.kids[0], lo, hi) || formula(*f.kids[1], lo, hi);
      case FormulaKind::Implies:
        return !formula(*f.kids[0], lo, hi) || formula(*f.kids[1], lo, hi);
      case FormulaKind::Iff:
        return formula(*f.kids[0], lo, hi) == formula(*f.kids[1], lo, hi);
      case FormulaKind::Next:
        return lo < hi && formula(*f.kids[0], lo + 1, hi);
      case FormulaKind::WNext:
        return lo == hi || formula(*f.kids[0], lo + 1, hi);
      case FormulaKind::Prev:
        return lo < hi && formula(*f.kids[0], lo, hi - 1);
      case FormulaKind::WPrev:
        return lo == hi || formula(*f.kids[0], lo, hi - 1);
      case FormulaKind::Diamond: {
        for (std::size_t m = lo; m <= hi; ++m) {
          if (formula(*f.kids[0], m, hi)) return true;
        }
        return false;
      }
      case FormulaKind::Box: {
        for (std::size_t m = lo; m <= hi; ++m) {
          if (!formula(*f.kids[0], m, hi)) return false;
        }
        return true;
      }
      case FormulaKind::DiamondI: {
        for (std::size_t m = lo; m <= hi; ++m) {
          if (formula(*f.kids[0], lo, m)) return true;
        }
        return false;
      }
      case FormulaKind::BoxI: {
        for (std::size_t m = lo; m <= hi; ++m) {
          if (!formula(*f.kids[0], lo, m)) return false;
        }
        return true;
      }
      case FormulaKind::DiamondA: {
        for (std::size_t i = lo; i <= hi; ++i) {
          for (std::size_t j = i; j <= hi; ++j) {
            if (formula(*f.kids[0], i, j)) return true;
          }
        }
        return false;
      }
      case FormulaKind::BoxA: {
        for (std::size_t i = lo; i <= hi; ++i) {
          for (std::size_t j = i; j <= hi; ++j) {
            if (!formula(*f.kids[0], i, j)) return false;
          }
        }
        return true;
      }
      case FormulaKind::Empty:
        return lo == hi;
      case FormulaKind::More:
        return lo < hi;

      case FormulaKind::Assign:
        return eq_values(in_.state(lo).at(f.var), expr(*f.expr, lo, hi));
      case FormulaKind::UnitAssign: {
        Value v = lo == hi ? cfg_.default_value(f.var.sort) : in_.state(lo + 1).at(f.var);
        return eq_values(v, expr(*f.expr, lo, hi));
      }
      case FormulaKind::TempAssign:
        return eq_values(in_.state(hi).at(f.var), expr(*f.expr, lo, hi));
      case FormulaKind::PastAssign: {
        Value v = lo == hi ? cfg_.default_value(f.var.sort) : in_.state(hi - 1).at(f.var);
        return eq_values(v, expr(*f.expr, lo, hi));
      }
      case FormulaKind::Gets: {
        for (std::size_t i = lo; i < hi; ++i) {
          if (!eq_values(in_.state(i + 1).at(f.var), expr(*f.expr, i, i + 1))) return false;
        }
        return true;
      }
      case FormulaKind::If:
        return formula(*f.kids[0], lo, hi) ? formula(*f.kids[1], lo, hi)
                                           : formula(*f.kids[2], lo, hi);
      case FormulaKind::Len:
        return hi - lo == f.len_n;
      case FormulaKind::Fin:
        return formula(*f.kids[0], hi, hi);
      case FormulaKind::Init:
        return formula(*f.kids[0], lo, lo);
      case FormulaKind::Halt: {
        for (std::size_t m = lo; m <= hi; ++m) {
          if (formula(*f.kids[0], m, hi) != (m == hi)) return false;
        }
        return true;
      }
      case FormulaKind::Keep: {
        for (std::size_t i = lo; i < hi; ++i) {
          if (!formula(*f.kids[0], i, i + 1)) return false;
        }
        return true;
      }
      case FormulaKind::InitOnly: {
        for (std::size_t m = lo; m <= hi; ++m) {
          if (formula(*f.kids[0], lo, m) != (m == lo)) return false;
        }
        return true;
      }
      case FormulaKind::While: {
        // (cond and body)* with the condition false at the end.
        return formula(*star_of_while(f), lo, hi) && formula(*f.kids[0], hi, hi) == false;
      }
    }
    throw EvalError(EvalError::Kind::SortMismatch, "unhandled formula");
  }

  static bool eq_values(const Value& a, const Value& b) {
    if (a.sort != b.sort)
      throw EvalError(EvalError::Kind::SortMismatch, "= applied to different sorts");
    return a == b;
  }

  const Formula* star_of_while(const Formula& f) {
    auto it = while_star_.find(&f);
    if (it == while_star_.end()) {
      it = while_star_.emplace(&f, f_star(f_and(f.kids[0], f.kids[1]))).first;
    }
    return it->second.get();
  }

  bool exists_holds(const Formula& f, std::size_t lo, std::size_t hi) {
    const VarName& v = f.var;
    const Formula& body = *f.kids[0];
    // A rebinding of v only matters where v occurs free.
    if (!free_vars(body).count(v)) return formula(body, lo, hi);

    std::vector<Value> cands;
    if (v.sort == Sort::Int) {
      for (auto x : cfg_.domain.int_values) cands.push_back(Value::of_int(x));
    } else {
      cands = {Value::of_bool(false), Value::of_bool(true)};
    }
    if (cands.empty()) return false;

    std::vector<State> base(in_.states().begin() + lo, in_.states().begin() + hi + 1);
    std::vector<std::size_t> idx(base.size(), 0);
    while (true) {
      std::vector<State> variant;
      variant.reserve(base.size());
      for (std::size_t i = 0; i < base.size(); ++i)
        variant.push_back(base[i].assigned(v, cands[idx[i]]));
      Interval vi(std::move(variant));
      Evaluator sub(vi, cfg_);
      if (sub.formula(body, 0, vi.length())) return true;
      std::size_t i = idx.size();
      bool done = true;
      while (i > 0) {
        --i;
        if (++idx[i] < cands.size()) {
          done = false;
          break;
        }
        idx[i] = 0;
      }
      if (done) return false;
    }
  }

  const Interval& in_;
  const EvalConfig& cfg_;
  std::map<std::tuple<const Formula*, std::size_t, std::size_t>, bool> memo_;
  std::map<const Formula*, FormulaPtr> while_star_;
};

}  // namespace

Value eval_expr(const Expr& e, const Interval& in, const EvalConfig& cfg) {
  Evaluator ev(in, cfg);
  return ev.expr(e, 0, in.length());
}

bool eval_formula(const Formula& f, const Interval& in, const EvalConfig& cfg) {
  Evaluator ev(in, cfg);
  return ev.formula(f, 0, in.length());
}

std::optional<Interval> satisfiable_bounded(const FormulaPtr& f, const Domain& d,
                                            const EvalConfig& cfg) {
  std::optional<Interval> witness;
  for_each_interval(d, [&](const Interval& in) {
    if (eval_formula(*f, in, cfg)) {
      witness = in;
      return false;
    }
    return true;
  });
  return witness;
}

ValidityResult valid_bounded(const FormulaPtr& f, const Domain& d, const EvalConfig& cfg) {
  ValidityResult r;
  r.valid = true;
  for_each_interval(d, [&](const Interval& in) {
    if (!eval_formula(*f, in, cfg)) {
      r.valid = false;
      r.counterexample = in;
      return false;
    }
    return true;
  });
  return r;
}

ValidityResult equivalent_bounded(const FormulaPtr& a, const FormulaPtr& b, const Domain& d,
                                  const EvalConfig& cfg) {
  ValidityResult r;
  r.valid = true;
  for_each_interval(d, [&](const Interval& in) {
    if (eval_formula(*a, in, cfg) != eval_formula(*b, in, cfg)) {
      r.valid = false;
      r.counterexample = in;
      return false;
    }
    return true;
  });
  return r;
}

}  // namespace itl
