#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "itl/value.hpp"

namespace itl {

using Universe = std::vector<VarName>;  // sorted, duplicate-free
using UniversePtr = std::shared_ptr<const Universe>;

UniversePtr make_universe(std::vector<VarName> vars);

// Total assignment of the universe's variables. Immutable.
class State {
 public:
  State(UniversePtr universe, std::vector<Value> vals);
  static State from_map(const std::map<VarName, Value>& m);

  const Universe& vars() const { return *universe_; }
  const UniversePtr& universe() const { return universe_; }
  const Value& at(const VarName& v) const;       // throws EvalError::UnknownVariable
  const Value* find(const VarName& v) const;
  State assigned(const VarName& v, Value val) const;

  bool operator==(const State& other) const;
  bool operator!=(const State& other) const { return !(*this == other); }
  bool operator<(const State& other) const;

 private:
  UniversePtr universe_;
  std::vector<Value> vals_;
};

// Non-empty finite sequence of states over one universe. The length of an
// interval is its number of states minus one.
class Interval {
 public:
  explicit Interval(std::vector<State> states);

  std::size_t length() const { return states_.size() - 1; }
  std::size_t num_states() const { return states_.size(); }
  const State& state(std::size_t i) const;
  const std::vector<State>& states() const { return states_; }
  const State& first() const { return states_.front(); }
  const State& last() const { return states_.back(); }

  Interval prefix(std::size_t k) const;                     // states 0..k
  Interval suffix(std::size_t k) const;                     // states k..length
  Interval subinterval(std::size_t i, std::size_t j) const; // states i..j

  bool operator==(const Interval& other) const { return states_ == other.states_; }
  bool operator!=(const Interval& other) const { return !(*this == other); }

 private:
  std::vector<State> states_;
};

Interval reverse(const Interval& in);

// Concatenation sharing the boundary state: defined only when a.last()
// equals b.first(), and then |result| = |a| + |b|.
std::optional<Interval> fuse(const Interval& a, const Interval& b);

// Projection of selected variables through every state.
struct ValueTrace {
  std::vector<VarName> vars;
  std::vector<std::vector<Value>> rows;  // one row per state

  bool operator==(const ValueTrace&) const = default;
};

ValueTrace project_trace(const Interval& in, const std::vector<VarName>& vars);

// Finite search space for bounded checks: the values each integer variable
// may take, the declared variables, and the maximum interval length.
struct Domain {
  std::vector<std::int64_t> int_values;
  Universe vars;
  unsigned max_len = 0;

  std::vector<Value> candidates(Sort s) const;
  std::vector<State> all_states() const;
  // sum over n = 0..max_len of (#states)^(n+1)
  unsigned long long count_intervals() const;
};

// Visits every interval over d, lengths ascending, states enumerated in a
// fixed lexicographic order. Stops early when fn returns false; the result
// says whether the walk ran to completion.
bool for_each_interval(const Domain& d, const std::function<bool(const Interval&)>& fn);

std::vector<Interval> all_intervals(const Domain& d);

}  // namespace itl
