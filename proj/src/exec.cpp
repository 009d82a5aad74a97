#include "itl/exec.hpp"

#include <map>

#include "itl/reflect.hpp"

namespace itl {

const char* property_name(ExecProperty p) {
  switch (p) {
    case ExecProperty::CommonPrefix: return "common-prefix";
    case ExecProperty::CommonSuffix: return "common-suffix";
    case ExecProperty::ForwardExec: return "forward-executable";
    case ExecProperty::BackwardExec: return "backward-executable";
  }
  return "?";
}

namespace {

struct LengthBucket {
  std::vector<std::pair<ValueTrace, Interval>> distinct;  // first two are enough
};

// Collects, per interval length, the distinct projected traces of satisfying
// intervals with a representative interval each.
std::map<std::size_t, LengthBucket> collect(const FormulaPtr& f, const std::vector<VarName>& vars,
                                            const Domain& d, const EvalConfig& cfg) {
  std::map<std::size_t, LengthBucket> buckets;
  for_each_interval(d, [&](const Interval& in) {
    if (!eval_formula(*f, in, cfg)) return true;
    ValueTrace t = project_trace(in, vars);
    LengthBucket& b = buckets[in.length()];
    for (const auto& [seen, rep] : b.distinct) {
      if (seen == t) return true;
    }
    if (b.distinct.size() < 2) b.distinct.emplace_back(std::move(t), in);
    return true;
  });
  return buckets;
}

bool rows_prefix(const ValueTrace& shorter, const ValueTrace& longer) {
  for (std::size_t i = 0; i < shorter.rows.size(); ++i) {
    if (shorter.rows[i] != longer.rows[i]) return false;
  }
  return true;
}

bool rows_suffix(const ValueTrace& shorter, const ValueTrace& longer) {
  std::size_t off = longer.rows.size() - shorter.rows.size();
  for (std::size_t i = 0; i < shorter.rows.size(); ++i) {
    if (shorter.rows[i] != longer.rows[off + i]) return false;
  }
  return true;
}

ExecVerdict alignment(ExecProperty prop, const FormulaPtr& f, const std::vector<VarName>& vars,
                      const Domain& d, const EvalConfig& cfg) {
  ExecVerdict v;
  v.property = prop;
  v.bound = d;
  v.holds = true;
  bool suffix = prop == ExecProperty::CommonSuffix;

  auto buckets = collect(f, vars, d, cfg);
  const std::pair<const std::size_t, LengthBucket>* prev = nullptr;
  for (const auto& entry : buckets) {
    const LengthBucket& b = entry.second;
    if (b.distinct.size() > 1) {
      v.holds = false;
      v.witness_pair = std::make_pair(b.distinct[0].second, b.distinct[1].second);
      return v;
    }
    if (prev) {
      const ValueTrace& shorter = prev->second.distinct[0].first;
      const ValueTrace& longer = b.distinct[0].first;
      bool ok = suffix ? rows_suffix(shorter, longer) : rows_prefix(shorter, longer);
      if (!ok) {
        v.holds = false;
        v.witness_pair = std::make_pair(prev->second.distinct[0].second, b.distinct[0].second);
        return v;
      }
    }
    prev = &entry;
  }
  return v;
}

}  // namespace

ExecVerdict common_prefix(const FormulaPtr& f, const std::vector<VarName>& vars, const Domain& d,
                          const EvalConfig& cfg) {
  return alignment(ExecProperty::CommonPrefix, f, vars, d, cfg);
}

ExecVerdict common_suffix(const FormulaPtr& f, const std::vector<VarName>& vars, const Domain& d,
                          const EvalConfig& cfg) {
  return alignment(ExecProperty::CommonSuffix, f, vars, d, cfg);
}

ExecVerdict forward_executable(const FormulaPtr& f, const std::vector<VarName>& vars,
                               const Domain& d, const EvalConfig& cfg) {
  ExecVerdict v = common_prefix(f, vars, d, cfg);
  v.property = ExecProperty::ForwardExec;
  v.sat_witness = satisfiable_bounded(f, d, cfg);
  v.holds = v.holds && v.sat_witness.has_value();
  return v;
}

ExecVerdict backward_executable(const FormulaPtr& f, const std::vector<VarName>& vars,
                                const Domain& d, const EvalConfig& cfg) {
  ExecVerdict v = common_suffix(f, vars, d, cfg);
  v.property = ExecProperty::BackwardExec;
  v.sat_witness = satisfiable_bounded(f, d, cfg);
  v.holds = v.holds && v.sat_witness.has_value();
  return v;
}

std::size_t determinism_count(const FormulaPtr& f, const std::vector<VarName>& vars,
                              const Domain& d, const EvalConfig& cfg, std::size_t k) {
  std::vector<ValueTrace> seen;
  for_each_interval(d, [&](const Interval& in) {
    if (in.length() != k || !eval_formula(*f, in, cfg)) return true;
    ValueTrace t = project_trace(in, vars);
    for (const auto& s : seen) {
      if (s == t) return true;
    }
    seen.push_back(std::move(t));
    return true;
  });
  return seen.size();
}

DualityReport check_duality(const FormulaPtr& f, const std::vector<VarName>& vars, const Domain& d,
                            const EvalConfig& cfg) {
  DualityReport r;
  FormulaPtr rf = reflect_formula(f);
  r.prefix_matches_reflected_suffix =
      common_prefix(rf, vars, d, cfg).holds == common_suffix(f, vars, d, cfg).holds;
  r.suffix_matches_reflected_prefix =
      common_suffix(rf, vars, d, cfg).holds == common_prefix(f, vars, d, cfg).holds;
  r.sat_matches_reflected_sat =
      satisfiable_bounded(rf, d, cfg).has_value() == satisfiable_bounded(f, d, cfg).has_value();
  return r;
}

}  // namespace itl
