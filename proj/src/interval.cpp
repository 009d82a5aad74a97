#include "itl/interval.hpp"

#include <algorithm>

#include "itl/errors.hpp"

namespace itl {

UniversePtr make_universe(std::vector<VarName> vars) {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return std::make_shared<const Universe>(std::move(vars));
}

State::State(UniversePtr universe, std::vector<Value> vals)
    : universe_(std::move(universe)), vals_(std::move(vals)) {
  if (!universe_ || universe_->size() != vals_.size())
    throw Error("state: value count does not match universe");
  for (std::size_t i = 0; i < vals_.size(); ++i) {
    if (vals_[i].sort != (*universe_)[i].sort)
      throw Error("state: value sort does not match variable " + (*universe_)[i].name);
  }
}

State State::from_map(const std::map<VarName, Value>& m) {
  std::vector<VarName> vars;
  std::vector<Value> vals;
  for (const auto& [v, val] : m) {
    vars.push_back(v);
    vals.push_back(val);
  }
  return State(make_universe(std::move(vars)), std::move(vals));
}

const Value* State::find(const VarName& v) const {
  for (std::size_t i = 0; i < universe_->size(); ++i) {
    if ((*universe_)[i] == v) return &vals_[i];
  }
  return nullptr;
}

const Value& State::at(const VarName& v) const {
  const Value* p = find(v);
  if (!p)
    throw EvalError(EvalError::Kind::UnknownVariable, "unknown variable " + v.name);
  return *p;
}

State State::assigned(const VarName& v, Value val) const {
  for (std::size_t i = 0; i < universe_->size(); ++i) {
    if ((*universe_)[i] == v) {
      std::vector<Value> vals = vals_;
      vals[i] = val;
      return State(universe_, std::move(vals));
    }
  }
  // Extend the universe with the new variable.
  std::vector<VarName> vars = *universe_;
  vars.push_back(v);
  auto uni = make_universe(std::move(vars));
  std::vector<Value> vals;
  vals.reserve(uni->size());
  for (const auto& u : *uni) vals.push_back(u == v ? val : at(u));
  return State(std::move(uni), std::move(vals));
}

bool State::operator==(const State& other) const {
  if (universe_ == other.universe_) return vals_ == other.vals_;
  return *universe_ == *other.universe_ && vals_ == other.vals_;
}

bool State::operator<(const State& other) const {
  if (universe_ != other.universe_ && !(*universe_ == *other.universe_))
    throw Error("state comparison across different universes");
  return vals_ < other.vals_;
}

Interval::Interval(std::vector<State> states) : states_(std::move(states)) {
  if (states_.empty()) throw Error("interval: empty state sequence");
  for (std::size_t i = 1; i < states_.size(); ++i) {
    if (!(states_[i].vars() == states_[0].vars()))
      throw Error("interval: states disagree on declared variables");
  }
}

const State& Interval::state(std::size_t i) const {
  if (i >= states_.size()) throw IndexError("state index " + std::to_string(i) + " out of range");
  return states_[i];
}

Interval Interval::prefix(std::size_t k) const {
  if (k > length()) throw IndexError("prefix length " + std::to_string(k) + " out of range");
  return Interval(std::vector<State>(states_.begin(), states_.begin() + k + 1));
}

Interval Interval::suffix(std::size_t k) const {
  if (k > length()) throw IndexError("suffix start " + std::to_string(k) + " out of range");
  return Interval(std::vector<State>(states_.begin() + k, states_.end()));
}

Interval Interval::subinterval(std::size_t i, std::size_t j) const {
  if (i > j || j > length())
    throw IndexError("subinterval " + std::to_string(i) + ".." + std::to_string(j) + " out of range");
  return Interval(std::vector<State>(states_.begin() + i, states_.begin() + j + 1));
}

Interval reverse(const Interval& in) {
  std::vector<State> states(in.states().rbegin(), in.states().rend());
  return Interval(std::move(states));
}

std::optional<Interval> fuse(const Interval& a, const Interval& b) {
  if (a.last() != b.first()) return std::nullopt;
  std::vector<State> states = a.states();
  states.insert(states.end(), b.states().begin() + 1, b.states().end());
  return Interval(std::move(states));
}

ValueTrace project_trace(const Interval& in, const std::vector<VarName>& vars) {
  ValueTrace t;
  t.vars = vars;
  t.rows.reserve(in.num_states());
  for (const State& s : in.states()) {
    std::vector<Value> row;
    row.reserve(vars.size());
    for (const VarName& v : vars) row.push_back(s.at(v));
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<Value> Domain::candidates(Sort s) const {
  std::vector<Value> out;
  if (s == Sort::Int) {
    out.reserve(int_values.size());
    for (auto v : int_values) out.push_back(Value::of_int(v));
  } else {
    out = {Value::of_bool(false), Value::of_bool(true)};
  }
  return out;
}

std::vector<State> Domain::all_states() const {
  auto uni = make_universe(vars);
  std::vector<std::vector<Value>> per_var;
  per_var.reserve(uni->size());
  for (const auto& v : *uni) per_var.push_back(candidates(v.sort));

  std::vector<State> out;
  std::vector<std::size_t> idx(uni->size(), 0);
  while (true) {
    std::vector<Value> vals;
    vals.reserve(uni->size());
    for (std::size_t i = 0; i < uni->size(); ++i) vals.push_back(per_var[i][idx[i]]);
    out.emplace_back(uni, std::move(vals));
    // odometer, last variable fastest
    std::size_t i = uni->size();
    while (i > 0) {
      --i;
      if (++idx[i] < per_var[i].size()) break;
      idx[i] = 0;
      if (i == 0) return out;
    }
    if (uni->empty()) return out;
  }
}

unsigned long long Domain::count_intervals() const {
  unsigned long long states = 1;
  for (const auto& v : vars) states *= (v.sort == Sort::Int ? int_values.size() : 2);
  unsigned long long total = 0;
  unsigned long long pow = states;  // states^(n+1), starting at n = 0
  for (unsigned n = 0; n <= max_len; ++n) {
    total += pow;
    pow *= states;
  }
  return total;
}

bool for_each_interval(const Domain& d, const std::function<bool(const Interval&)>& fn) {
  std::vector<State> states = d.all_states();
  if (states.empty()) return true;
  for (unsigned n = 0; n <= d.max_len; ++n) {
    std::vector<std::size_t> idx(n + 1, 0);
    while (true) {
      std::vector<State> seq;
      seq.reserve(n + 1);
      for (auto i : idx) seq.push_back(states[i]);
      if (!fn(Interval(std::move(seq)))) return false;
      std::size_t i = idx.size();
      bool done = true;
      while (i > 0) {
        --i;
        if (++idx[i] < states.size()) {
          done = false;
          break;
        }
        idx[i] = 0;
      }
      if (done) break;
    }
  }
  return true;
}

std::vector<Interval> all_intervals(const Domain& d) {
  std::vector<Interval> out;
  for_each_interval(d, [&](const Interval& in) {
    out.push_back(in);
    return true;
  });
  return out;
}

}  // namespace itl
