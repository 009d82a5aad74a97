#include "itl/specfile.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "itl/errors.hpp"
#include "itl/interval.hpp"

namespace itl {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

std::int64_t parse_int(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    std::int64_t v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, 1, "expected an integer, got '" + s + "'");
  }
}

// "var NAME : SORT", colon optionally glued to either word
void parse_var_line(const std::string& rest, int line, SymbolTable& table, Universe& declared) {
  std::string flat = rest;
  for (char& ch : flat) {
    if (ch == ':') ch = ' ';
  }
  std::vector<std::string> w = words(flat);
  if (w.size() != 2) throw ParseError(line, 1, "expected 'var NAME : SORT'");
  if (!valid_identifier(w[0])) throw ParseError(line, 1, "bad variable name '" + w[0] + "'");
  Sort sort;
  if (w[1] == "int") {
    sort = Sort::Int;
  } else if (w[1] == "bool") {
    sort = Sort::Bool;
  } else {
    throw ParseError(line, 1, "unknown sort '" + w[1] + "'");
  }
  auto [it, fresh] = table.sorts.emplace(w[0], sort);
  if (!fresh) throw ParseError(line, 1, "variable " + w[0] + " declared twice");
  declared.push_back(VarName{w[0], sort});
}

void parse_option_line(const std::string& rest, int line, SpecFile& sp) {
  std::vector<std::string> w = words(rest);
  if (w.size() != 2) throw ParseError(line, 1, "expected 'option NAME VALUE'");
  if (w[0] == "int-domain") {
    std::size_t dots = w[1].find("..");
    if (dots == std::string::npos) {
      throw ParseError(line, 1, "expected 'option int-domain LO..HI'");
    }
    std::int64_t lo = parse_int(w[1].substr(0, dots), line);
    std::int64_t hi = parse_int(w[1].substr(dots + 2), line);
    if (lo > hi) throw ParseError(line, 1, "empty range " + w[1]);
    sp.int_domain = std::make_pair(lo, hi);
  } else if (w[0] == "max-len") {
    std::int64_t n = parse_int(w[1], line);
    if (n < 0) throw ParseError(line, 1, "max-len must be non-negative");
    sp.max_len = static_cast<unsigned>(n);
  } else if (w[0] == "default-int") {
    sp.default_int = parse_int(w[1], line);
  } else {
    throw ParseError(line, 1, "unknown option '" + w[0] + "'");
  }
}

}  // namespace

SpecFile parse_spec_text(const std::string& text, const std::string& origin) {
  SpecFile sp;
  SymbolTable table;
  Universe declared;

  std::vector<std::string> lines;
  {
    std::istringstream is(text);
    std::string l;
    while (std::getline(is, l)) lines.push_back(l);
  }

  std::size_t body = lines.size();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string t = trim(lines[i]);
    int line = static_cast<int>(i) + 1;
    if (t.empty() || t[0] == '#') continue;
    if (t.rfind("var ", 0) == 0) {
      parse_var_line(t.substr(4), line, table, declared);
    } else if (t.rfind("option ", 0) == 0) {
      parse_option_line(t.substr(7), line, sp);
    } else {
      body = i;
      break;
    }
  }
  if (body == lines.size()) {
    throw ParseError(static_cast<int>(lines.size()) + 1, 1,
                     "missing formula" + (origin.empty() ? "" : " in " + origin));
  }

  // keep absolute line numbers in parse errors
  std::string formula_text(body, '\n');
  for (std::size_t i = body; i < lines.size(); ++i) {
    formula_text += lines[i];
    formula_text += '\n';
  }
  sp.formula = parse_formula(formula_text, table);

  std::vector<VarName> all;
  all.reserve(table.sorts.size());
  for (const auto& [name, sort] : table.sorts) all.push_back(VarName{name, sort});
  sp.vars = *make_universe(std::move(all));
  return sp;
}

SpecFile load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec_text(buf.str(), path);
}

std::string trace_to_text(const Interval& in, const std::vector<VarName>& order) {
  std::ostringstream os;
  for (std::size_t i = 0; i < in.num_states(); ++i) {
    os << i << ":";
    for (const VarName& v : order) os << " " << v.name << "=" << to_string(in.state(i).at(v));
    os << "\n";
  }
  return os.str();
}

std::string trace_to_json_lines(const Interval& in, const std::vector<VarName>& order) {
  std::ostringstream os;
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
    os << row.dump() << "\n";
  }
  return os.str();
}

namespace {

Value parse_value(const std::string& text, Sort sort, int line) {
  if (sort == Sort::Bool) {
    if (text == "true") return Value::of_bool(true);
    if (text == "false") return Value::of_bool(false);
    throw ParseError(line, 1, "expected true or false, got '" + text + "'");
  }
  return Value::of_int(parse_int(text, line));
}

State state_from_json(const nlohmann::json& row, const UniversePtr& u, int line) {
  std::vector<Value> vals;
  vals.reserve(u->size());
  for (const VarName& v : *u) {
    auto it = row.find(v.name);
    if (it == row.end()) throw ParseError(line, 1, "state is missing variable " + v.name);
    if (v.sort == Sort::Bool) {
      if (!it->is_boolean()) throw ParseError(line, 1, v.name + " must be a boolean");
      vals.push_back(Value::of_bool(it->get<bool>()));
    } else {
      if (!it->is_number_integer()) throw ParseError(line, 1, v.name + " must be an integer");
      vals.push_back(Value::of_int(it->get<std::int64_t>()));
    }
  }
  return State(u, std::move(vals));
}

State state_from_text(const std::string& t, const UniversePtr& u, int line) {
  std::string rest = t;
  std::size_t colon = rest.find(':');
  if (colon != std::string::npos) {
    std::string idx = trim(rest.substr(0, colon));
    bool numeric = !idx.empty();
    for (char ch : idx) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) numeric = false;
    }
    if (numeric) rest = rest.substr(colon + 1);
  }
  std::map<std::string, std::string> given;
  for (const std::string& w : words(rest)) {
    std::size_t eq = w.find('=');
    if (eq == std::string::npos) {
      throw ParseError(line, 1, "expected NAME=VALUE, got '" + w + "'");
    }
    given[w.substr(0, eq)] = w.substr(eq + 1);
  }
  std::vector<Value> vals;
  vals.reserve(u->size());
  for (const VarName& v : *u) {
    auto it = given.find(v.name);
    if (it == given.end()) throw ParseError(line, 1, "state is missing variable " + v.name);
    vals.push_back(parse_value(it->second, v.sort, line));
    given.erase(it);
  }
  if (!given.empty()) {
    throw ParseError(line, 1, "undeclared variable " + given.begin()->first + " in state");
  }
  return State(u, std::move(vals));
}

}  // namespace

Interval parse_trace(const std::string& text, const Universe& vars) {
  UniversePtr u = make_universe(vars);
  std::vector<State> states;
  std::istringstream is(text);
  std::string l;
  int line = 0;
  while (std::getline(is, l)) {
    ++line;
    std::string t = trim(l);
    if (t.empty() || t[0] == '#') continue;
    if (t[0] == '{') {
      nlohmann::json row;
      try {
        row = nlohmann::json::parse(t);
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(line, 1, std::string("bad state: ") + e.what());
      }
      states.push_back(state_from_json(row, u, line));
    } else {
      states.push_back(state_from_text(t, u, line));
    }
  }
  if (states.empty()) throw ParseError(line + 1, 1, "a trace needs at least one state");
  return Interval(std::move(states));
}

Interval load_trace_file(const std::string& path, const Universe& vars) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_trace(buf.str(), vars);
}

}  // namespace itl
