#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "itl/semantics.hpp"

namespace itl {

enum class ExecProperty {
  CommonPrefix,   // every shorter satisfying trace is a prefix of every longer one
  CommonSuffix,   // every shorter satisfying trace is a suffix of every longer one
  ForwardExec,    // satisfiable and common-prefix
  BackwardExec,   // satisfiable and common-suffix
};

const char* property_name(ExecProperty p);

struct ExecVerdict {
  ExecProperty property = ExecProperty::CommonPrefix;
  bool holds = false;
  Domain bound;
  // Two satisfying intervals whose projections disagree, for failed
  // prefix/suffix checks.
  std::optional<std::pair<Interval, Interval>> witness_pair;
  // A satisfying interval, when satisfiability was part of the property.
  std::optional<Interval> sat_witness;
};

ExecVerdict common_prefix(const FormulaPtr& f, const std::vector<VarName>& vars, const Domain& d,
                          const EvalConfig& cfg);
ExecVerdict common_suffix(const FormulaPtr& f, const std::vector<VarName>& vars, const Domain& d,
                          const EvalConfig& cfg);
ExecVerdict forward_executable(const FormulaPtr& f, const std::vector<VarName>& vars,
                               const Domain& d, const EvalConfig& cfg);
ExecVerdict backward_executable(const FormulaPtr& f, const std::vector<VarName>& vars,
                                const Domain& d, const EvalConfig& cfg);

// Number of distinct projected traces among satisfying intervals of length k.
std::size_t determinism_count(const FormulaPtr& f, const std::vector<VarName>& vars,
                              const Domain& d, const EvalConfig& cfg, std::size_t k);

struct DualityReport {
  bool prefix_matches_reflected_suffix = true;   // prefix[reflect f] == suffix[f]
  bool suffix_matches_reflected_prefix = true;   // suffix[reflect f] == prefix[f]
  bool sat_matches_reflected_sat = true;
};

// Checks that reversal swaps the two trace-alignment properties and
// preserves satisfiability, over the given bound.
DualityReport check_duality(const FormulaPtr& f, const std::vector<VarName>& vars, const Domain& d,
                            const EvalConfig& cfg);

}  // namespace itl
