#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>

#include "itl/semantics.hpp"

namespace itl {

// One-step view of a formula at the current state: what must hold now, what
// carries over to the next unit, and what remains afterwards.
struct ReductionState {
  std::map<VarName, Value> bindings;        // variables the step determines uniquely
  std::vector<FormulaPtr> now;              // unresolved checks on the current state
  std::vector<FormulaPtr> carried_unit;     // checks on the unit to the next state
  FormulaPtr residual;                      // obligation from the next state on
  bool done_allowed = false;                // the interval may end here
  bool more_required = false;               // the interval must continue
};

// Throws EngineError (NotExecutable / Contradiction).
ReductionState reduce_step(const FormulaPtr& f, const std::map<VarName, Value>& known,
                           const Domain& d, const EvalConfig& cfg);

enum class RunStatus {
  Completed,         // terminated; the produced interval satisfies the formula
  LengthBound,       // step budget exhausted before termination
  Deadlock,          // no next state satisfies the constraints
  Nondeterministic,  // more than one next state (or stop state) satisfies them
  NotExecutable,     // the formula leaves the executable fragment
};

const char* status_name(RunStatus s);

struct RunResult {
  RunStatus status = RunStatus::NotExecutable;
  std::optional<Interval> trace;  // forward state order; partial on failure
  std::size_t steps = 0;
  bool audit_ok = false;  // Completed traces are re-checked against the formula
  std::string detail;
};

// Builds an interval left to right by solving each step's constraints over
// the domain. Deterministic: at most one viable next state is accepted.
RunResult run_forward(const FormulaPtr& f, const Domain& d, const EvalConfig& cfg,
                      std::size_t max_steps = 10000);

// Builds an interval right to left by running the reflected formula forward
// and reversing the result. Never consults any previously produced trace.
RunResult run_backward(const FormulaPtr& f, const Domain& d, const EvalConfig& cfg,
                       std::size_t max_steps = 10000);

// (f and len k) ; (reflect(f) and len k)
FormulaPtr undo_compose(const FormulaPtr& f, unsigned k);

enum class UndoPremise {
  BadSatisfiable,    // bad, anchored at the handoff state, has a length-k model
  BadCommonPrefix,   // anchored bad has the common-prefix property
  BadCommonSuffix,   // anchored bad has the common-suffix property
};

const char* premise_name(UndoPremise p);

struct UndoResult {
  bool premises_ok = false;
  std::optional<UndoPremise> failed_premise;
  RunResult run;               // the composite run (good ; bad ; reflected bad)
  std::optional<Interval> good_trace;
  bool restored = false;       // final state equals the handoff state on tracked vars
  std::string detail;
};

// Runs good forward, then appends bad for k steps and the reflection of bad
// for k more steps, checking first that bad anchored at good's final state
// is a deterministic length-k computation in both directions.
UndoResult run_undo(const FormulaPtr& good, const FormulaPtr& bad, unsigned k,
                    const std::vector<VarName>& tracked, const Domain& d, const EvalConfig& cfg,
                    std::size_t max_steps = 10000);

}  // namespace itl
