#include "itl/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "itl/engine.hpp"
#include "itl/errors.hpp"
#include "itl/exec.hpp"
#include "itl/laws.hpp"
#include "itl/parser.hpp"
#include "itl/specfile.hpp"

namespace itl {

namespace {

struct Flags {
  std::string int_domain;
  std::string max_len;
  std::string default_int;
};

std::optional<std::pair<std::int64_t, std::int64_t>> parse_range(const std::string& s) {
  std::size_t dots = s.find("..");
  if (dots == std::string::npos) return std::nullopt;
  try {
    std::size_t used = 0;
    std::int64_t lo = std::stoll(s.substr(0, dots), &used);
    if (used != dots) return std::nullopt;
    std::string hi_text = s.substr(dots + 2);
    std::int64_t hi = std::stoll(hi_text, &used);
    if (used != hi_text.size() || lo > hi) return std::nullopt;
    return std::make_pair(lo, hi);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::optional<std::int64_t> parse_int_opt(const std::string& s) {
  try {
    std::size_t used = 0;
    std::int64_t v = std::stoll(s, &used);
    if (used != s.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::string env_or_empty(const char* name) {
  const char* v = std::getenv(name);
  return v ? std::string(v) : std::string();
}

SpecFile load_spec(const std::string& arg) {
  SpecFile sp = std::filesystem::exists(arg) ? load_spec_file(arg) : parse_spec_text(arg, "");
  if (auto problem = sort_problem(*sp.formula)) throw Error(*problem);
  return sp;
}

EvalConfig resolve_config(const SpecFile& sp, const Flags& flags) {
  std::pair<std::int64_t, std::int64_t> range{0, 3};
  bool have_range = false;
  if (!flags.int_domain.empty()) {
    auto r = parse_range(flags.int_domain);
    if (!r) throw Error("bad --int-domain, expected LO..HI: " + flags.int_domain);
    range = *r;
    have_range = true;
  } else if (sp.int_domain) {
    range = *sp.int_domain;
    have_range = true;
  } else if (std::string env = env_or_empty("ITLREV_INT_DOMAIN"); !env.empty()) {
    auto r = parse_range(env);
    if (!r) throw Error("bad ITLREV_INT_DOMAIN, expected LO..HI: " + env);
    range = *r;
    have_range = true;
  }
  (void)have_range;
  if (range.second - range.first >= 1000000) {
    throw Error("integer domain too large: " + std::to_string(range.first) + ".." +
                std::to_string(range.second));
  }

  std::int64_t max_len = 4;
  if (!flags.max_len.empty()) {
    auto n = parse_int_opt(flags.max_len);
    if (!n || *n < 0) throw Error("bad --max-len: " + flags.max_len);
    max_len = *n;
  } else if (sp.max_len) {
    max_len = *sp.max_len;
  } else if (std::string env = env_or_empty("ITLREV_MAX_LEN"); !env.empty()) {
    auto n = parse_int_opt(env);
    if (!n || *n < 0) throw Error("bad ITLREV_MAX_LEN: " + env);
    max_len = *n;
  }

  std::int64_t def = 0;
  if (!flags.default_int.empty()) {
    auto n = parse_int_opt(flags.default_int);
    if (!n) throw Error("bad --default-int: " + flags.default_int);
    def = *n;
  } else if (sp.default_int) {
    def = *sp.default_int;
  }

  EvalConfig cfg;
  cfg.domain.vars = sp.vars;
  cfg.domain.max_len = static_cast<unsigned>(max_len);
  for (std::int64_t v = range.first; v <= range.second; ++v) {
    cfg.domain.int_values.push_back(v);
  }
  cfg.default_int = def;
  return cfg;
}

std::string bound_text(const Domain& d) {
  std::ostringstream os;
  os << "lengths <= " << d.max_len;
  if (!d.int_values.empty()) {
    os << ", ints " << d.int_values.front() << ".." << d.int_values.back();
  }
  return os.str();
}

std::vector<VarName> pick_vars(const SpecFile& sp, const std::string& list) {
  if (list.empty()) return sp.vars;
  std::vector<VarName> out;
  std::stringstream ss(list);
  std::string name;
  while (std::getline(ss, name, ',')) {
    bool found = false;
    for (const VarName& v : sp.vars) {
      if (v.name == name) {
        out.push_back(v);
        found = true;
        break;
      }
    }
    if (!found) throw Error("unknown variable in --vars: " + name);
  }
  return out;
}

void print_trace(std::ostream& out, const Interval& in, const std::vector<VarName>& order,
                 const std::string& format) {
  if (format == "json") {
    out << trace_to_json_lines(in, order);
  } else {
    out << trace_to_text(in, order);
  }
}

nlohmann::ordered_json trace_json(const Interval& in, const std::vector<VarName>& order) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < in.num_states(); ++i) {
    nlohmann::ordered_json row;
    for (const VarName& v : order) {
      const Value& val = in.state(i).at(v);
      if (v.sort == Sort::Bool) {
        row[v.name] = val.as_bool();
      } else {
        row[v.name] = val.as_int();
      }
    }
    rows.push_back(row);
  }
  return rows;
}

int report_run(std::ostream& out, const RunResult& r, const SpecFile& sp,
               const std::string& format) {
  if (format == "json") {
    nlohmann::ordered_json j;
    j["status"] = status_name(r.status);
    j["steps"] = r.steps;
    j["audit"] = r.audit_ok;
    j["detail"] = r.detail;
    j["trace"] = r.trace ? trace_json(*r.trace, sp.vars) : nlohmann::ordered_json::array();
    out << j.dump(2) << "\n";
  } else {
    out << "status: " << status_name(r.status) << "\n";
    out << "steps: " << r.steps << "\n";
    if (r.status == RunStatus::Completed) {
      out << "audit: " << (r.audit_ok ? "ok" : "FAILED") << "\n";
    }
    if (!r.detail.empty()) out << "detail: " << r.detail << "\n";
    if (r.trace) out << trace_to_text(*r.trace, sp.vars);
  }
  return r.status == RunStatus::Completed && r.audit_ok ? 0 : 1;
}

int report_exec(std::ostream& out, const ExecVerdict& v, const SpecFile& sp) {
  out << property_name(v.property) << ": " << (v.holds ? "holds" : "fails") << " ("
      << bound_text(v.bound) << ")\n";
  if (!v.holds && v.witness_pair) {
    out << "  disagreeing runs:\n";
    std::ostringstream a, b;
    a << trace_to_text(v.witness_pair->first, sp.vars);
    b << trace_to_text(v.witness_pair->second, sp.vars);
    std::string line;
    std::istringstream ia(a.str());
    while (std::getline(ia, line)) out << "    " << line << "\n";
    out << "  --\n";
    std::istringstream ib(b.str());
    while (std::getline(ib, line)) out << "    " << line << "\n";
  }
  return v.holds ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"interval temporal logic with time reversal"};
  app.require_subcommand(1);
  Flags flags;

  std::string spec_arg, trace_file, vars_list, prop = "all", format = "text";
  std::string bad_arg, track_list;
  std::int64_t steps_k = 0;
  std::size_t max_steps = 10000;
  bool show_tree = false, show_trail = false;

  auto add_common = [&flags](CLI::App* sub) {
    sub->add_option("--int-domain", flags.int_domain, "integer range LO..HI for bounded checks");
    sub->add_option("--max-len", flags.max_len, "maximum interval length for bounded checks");
    sub->add_option("--default-int", flags.default_int,
                    "value of next/prev reads that fall off the interval");
  };
  auto add_spec = [&spec_arg](CLI::App* sub) {
    sub->add_option("spec", spec_arg, "spec file or inline formula")->required();
  };

  CLI::App* parse_cmd = app.add_subcommand("parse", "parse and print back");
  add_spec(parse_cmd);
  parse_cmd->add_flag("--tree", show_tree, "also print the constructor tree");

  CLI::App* desugar_cmd = app.add_subcommand("desugar", "rewrite to the kernel constructs");
  add_spec(desugar_cmd);

  CLI::App* reflect_cmd = app.add_subcommand("reflect", "time-reverse the formula");
  add_spec(reflect_cmd);
  reflect_cmd->add_flag("--trail", show_trail, "list the rewrite rules applied");

  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate on a given trace");
  add_spec(eval_cmd);
  eval_cmd->add_option("--trace", trace_file, "trace file (text or JSON lines)")->required();
  add_common(eval_cmd);

  CLI::App* sat_cmd = app.add_subcommand("sat", "search the bound for a satisfying interval");
  add_spec(sat_cmd);
  add_common(sat_cmd);

  CLI::App* valid_cmd = app.add_subcommand("valid", "check every interval within the bound");
  add_spec(valid_cmd);
  add_common(valid_cmd);

  CLI::App* count_cmd = app.add_subcommand("count", "size of the bounded search space");
  add_spec(count_cmd);
  add_common(count_cmd);

  CLI::App* exec_cmd =
      app.add_subcommand("check-exec", "trace-alignment and executability properties");
  add_spec(exec_cmd);
  exec_cmd->add_option("--vars", vars_list, "comma-separated projection variables");
  exec_cmd->add_option("--prop", prop, "prefix|suffix|forward|backward|duality|all")
      ->check(CLI::IsMember({"prefix", "suffix", "forward", "backward", "duality", "all"}));
  add_common(exec_cmd);

  CLI::App* run_cmd = app.add_subcommand("run", "execute forward, state by state");
  add_spec(run_cmd);
  run_cmd->add_option("--max-steps", max_steps, "step budget");
  run_cmd->add_option("--format", format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  add_common(run_cmd);

  CLI::App* rev_cmd = app.add_subcommand("run-rev", "execute backward, last state first");
  add_spec(rev_cmd);
  rev_cmd->add_option("--max-steps", max_steps, "step budget");
  rev_cmd->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));
  add_common(rev_cmd);

  CLI::App* undo_cmd =
      app.add_subcommand("undo", "run, append a computation, then run it in reverse");
  add_spec(undo_cmd);
  undo_cmd->add_option("--bad", bad_arg, "the computation to undo (spec file or formula)")
      ->required();
  undo_cmd->add_option("--k", steps_k, "length of the appended computation")->required();
  undo_cmd->add_option("--track", track_list, "comma-separated variables to restore");
  undo_cmd->add_option("--max-steps", max_steps, "step budget");
  undo_cmd->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));
  add_common(undo_cmd);

  CLI::App* laws_cmd = app.add_subcommand("laws", "check the reversal law catalogue");
  add_common(laws_cmd);

  std::vector<const char*> argv;
  argv.push_back("itl-rev");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (parse_cmd->parsed()) {
      SpecFile sp = load_spec(spec_arg);
      out << print(sp.formula) << "\n";
      if (show_tree) out << ast_dump(*sp.formula);
      return 0;
    }

    if (desugar_cmd->parsed()) {
      SpecFile sp = load_spec(spec_arg);
      out << print(desugar(sp.formula)) << "\n";
      return 0;
    }

    if (reflect_cmd->parsed()) {
      SpecFile sp = load_spec(spec_arg);
      ReflectionReport rep = reflect_formula_report(sp.formula);
      out << print(rep.output) << "\n";
      if (show_trail) {
        for (const std::string& id : rep.laws_applied) out << "  " << id << "\n";
      }
      return 0;
    }

    if (eval_cmd->parsed()) {
      SpecFile sp = load_spec(spec_arg);
      EvalConfig cfg = resolve_config(sp, flags);
      Interval in = load_trace_file(trace_file, sp.vars);
      bool v = eval_formula(*sp.formula, in, cfg);
      out << (v ? "true" : "false") << "\n";
      return v ? 0 : 1;
    }

    if (sat_cmd->parsed()) {
      SpecFile sp = load_spec(spec_arg);
      EvalConfig cfg = resolve_config(sp, flags);
      auto witness = satisfiable_bounded(sp.formula, cfg.domain, cfg);
      if (witness) {
        out << "satisfiable (" << bound_text(cfg.domain) << ")\n";
        out << trace_to_text(*witness, sp.vars);
        return 0;
      }
      out << "unsatisfiable (" << bound_text(cfg.domain) << ", "
          << cfg.domain.count_intervals() << " intervals)\n";
      return 1;
    }

    if (valid_cmd->parsed()) {
      SpecFile sp = load_spec(spec_arg);
      EvalConfig cfg = resolve_config(sp, flags);
      ValidityResult v = valid_bounded(sp.formula, cfg.domain, cfg);
      if (v.valid) {
        out << "valid (" << bound_text(cfg.domain) << ", " << cfg.domain.count_intervals()
            << " intervals)\n";
        return 0;
      }
      out << "counterexample (" << bound_text(cfg.domain) << "):\n";
      out << trace_to_text(*v.counterexample, sp.vars);
      return 1;
    }

    if (count_cmd->parsed()) {
      SpecFile sp = load_spec(spec_arg);
      EvalConfig cfg = resolve_config(sp, flags);
      out << "states: " << cfg.domain.all_states().size() << "\n";
      out << "intervals: " << cfg.domain.count_intervals() << " (" << bound_text(cfg.domain)
          << ")\n";
      return 0;
    }

    if (exec_cmd->parsed()) {
      SpecFile sp = load_spec(spec_arg);
      EvalConfig cfg = resolve_config(sp, flags);
      std::vector<VarName> vars = pick_vars(sp, vars_list);
      if (vars.empty()) {
        throw Error("nothing to project: declare variables in the spec or pass --vars");
      }
      int rc = 0;
      if (prop == "prefix" || prop == "all") {
        rc |= report_exec(out, common_prefix(sp.formula, vars, cfg.domain, cfg), sp);
      }
      if (prop == "suffix" || prop == "all") {
        rc |= report_exec(out, common_suffix(sp.formula, vars, cfg.domain, cfg), sp);
      }
      if (prop == "forward" || prop == "all") {
        rc |= report_exec(out, forward_executable(sp.formula, vars, cfg.domain, cfg), sp);
      }
      if (prop == "backward" || prop == "all") {
        rc |= report_exec(out, backward_executable(sp.formula, vars, cfg.domain, cfg), sp);
      }
      if (prop == "duality" || prop == "all") {
        DualityReport dr = check_duality(sp.formula, vars, cfg.domain, cfg);
        bool ok = dr.prefix_matches_reflected_suffix && dr.suffix_matches_reflected_prefix &&
                  dr.sat_matches_reflected_sat;
        out << "reversal-duality: " << (ok ? "holds" : "fails") << " (" << bound_text(cfg.domain)
            << ")\n";
        if (!ok) {
          out << "  prefix of reversal vs suffix: "
              << (dr.prefix_matches_reflected_suffix ? "ok" : "mismatch") << "\n";
          out << "  suffix of reversal vs prefix: "
              << (dr.suffix_matches_reflected_prefix ? "ok" : "mismatch") << "\n";
          out << "  satisfiability preserved: "
              << (dr.sat_matches_reflected_sat ? "ok" : "mismatch") << "\n";
        }
        rc |= ok ? 0 : 1;
      }
      return rc;
    }

    if (run_cmd->parsed() || rev_cmd->parsed()) {
      SpecFile sp = load_spec(spec_arg);
      EvalConfig cfg = resolve_config(sp, flags);
      RunResult r = run_cmd->parsed() ? run_forward(sp.formula, cfg.domain, cfg, max_steps)
                                      : run_backward(sp.formula, cfg.domain, cfg, max_steps);
      return report_run(out, r, sp, format);
    }

    if (undo_cmd->parsed()) {
      SpecFile good = load_spec(spec_arg);
      SpecFile bad = load_spec(bad_arg);
      if (steps_k < 0) throw Error("--k must be non-negative");

      std::vector<VarName> merged = good.vars;
      for (const VarName& v : bad.vars) {
        bool clash = false;
        for (const VarName& g : merged) {
          if (g.name == v.name && g.sort != v.sort) clash = true;
        }
        if (clash) throw Error("variable " + v.name + " has different sorts in the two specs");
        merged.push_back(v);
      }
      SpecFile joint = good;
      joint.vars = *make_universe(std::move(merged));
      EvalConfig cfg = resolve_config(joint, flags);

      std::vector<VarName> tracked =
          track_list.empty() ? joint.vars : pick_vars(joint, track_list);
      UndoResult u = run_undo(good.formula, bad.formula, static_cast<unsigned>(steps_k), tracked,
                              cfg.domain, cfg, max_steps);

      if (format == "json") {
        nlohmann::ordered_json j;
        j["premises"] = u.premises_ok;
        if (u.failed_premise) j["failed_premise"] = premise_name(*u.failed_premise);
        j["status"] = status_name(u.run.status);
        j["restored"] = u.restored;
        j["detail"] = u.detail;
        j["good_trace"] =
            u.good_trace ? trace_json(*u.good_trace, joint.vars) : nlohmann::ordered_json::array();
        j["trace"] = u.run.trace ? trace_json(*u.run.trace, joint.vars) : nlohmann::ordered_json::array();
        out << j.dump(2) << "\n";
      } else {
        out << "premises: " << (u.premises_ok ? "ok" : "failed") << "\n";
        if (u.failed_premise) out << "failed premise: " << premise_name(*u.failed_premise) << "\n";
        out << "status: " << status_name(u.run.status) << "\n";
        out << "restored: " << (u.restored ? "yes" : "no") << "\n";
        if (!u.detail.empty()) out << "detail: " << u.detail << "\n";
        if (u.run.trace) out << trace_to_text(*u.run.trace, joint.vars);
      }
      return u.premises_ok && u.run.status == RunStatus::Completed && u.restored ? 0 : 1;
    }

    if (laws_cmd->parsed()) {
      SpecFile sp;
      sp.vars = *make_universe({int_var("A"), bool_var("Q")});
      if (flags.int_domain.empty() && env_or_empty("ITLREV_INT_DOMAIN").empty()) {
        sp.int_domain = std::make_pair<std::int64_t, std::int64_t>(0, 2);
      }
      if (flags.max_len.empty() && env_or_empty("ITLREV_MAX_LEN").empty()) sp.max_len = 3;
      EvalConfig cfg = resolve_config(sp, flags);
      std::vector<LawResult> results = run_law_suite(cfg.domain, cfg);
      std::size_t checked = 0;
      for (const LawResult& r : results) {
        out << (r.passed ? "  ok  " : "FAIL  ") << r.id;
        for (std::size_t i = r.id.size(); i < 14; ++i) out << ' ';
        out << r.statement << "  [" << r.instances << "]\n";
        if (!r.passed) out << "      " << r.failure << "\n";
        checked += r.instances;
      }
      out << results.size() << " laws, " << checked << " instances ("
          << bound_text(cfg.domain) << ")\n";
      return all_passed(results) ? 0 : 1;
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace itl
