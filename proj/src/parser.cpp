#include "itl/parser.hpp"

#include <cctype>
#include <cstdlib>
#include <set>

#include "itl/errors.hpp"

namespace itl {

namespace {

enum class Tok {
  End,
  Ident,
  Int,
  Keyword,
  Semi,      // ;
  LParen,
  RParen,
  Star,
  Plus,
  Minus,
  Dot,
  Colon,
  Prime,     // '
  Eq,        // =
  Lt,
  Le,
  Gt,
  Ge,
  Implies,   // =>
  Iff,       // <=>
  AssignNext,  // :=
  AssignFin,   // <-
  AssignPrev,  // =:
};

struct Token {
  Tok kind;
  std::string text;
  std::int64_t value = 0;
  int line = 1;
  int col = 1;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> kw = {
      "and",  "or",   "not",      "true",  "false",    "skip",  "empty",    "more",
      "len",  "exists", "if",     "then",  "else",     "while", "do",       "next",
      "wnext", "prev", "wprev",   "box",   "diamond",  "boxi",  "diamondi", "boxa",
      "diamonda", "init", "fin",  "halt",  "keep",     "initonly", "gets",  "div",
      "mod",  "int",  "bool"};
  return kw;
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto bump = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') bump(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      bump(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      t.kind = Tok::Int;
      t.text = text.substr(i, j - i);
      errno = 0;
      char* end = nullptr;
      t.value = std::strtoll(t.text.c_str(), &end, 10);
      if (errno == ERANGE) throw ParseError(line, col, "integer literal out of range");
      bump(j - i);
      out.push_back(std::move(t));
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      t.text = text.substr(i, j - i);
      t.kind = keywords().count(t.text) ? Tok::Keyword : Tok::Ident;
      bump(j - i);
      out.push_back(std::move(t));
      continue;
    }
    auto two = text.substr(i, 2);
    auto three = text.substr(i, 3);
    if (three == "<=>") {
      t.kind = Tok::Iff;
      bump(3);
    } else if (two == "=>") {
      t.kind = Tok::Implies;
      bump(2);
    } else if (two == "=:") {
      t.kind = Tok::AssignPrev;
      bump(2);
    } else if (two == "<=") {
      t.kind = Tok::Le;
      bump(2);
    } else if (two == "<-") {
      t.kind = Tok::AssignFin;
      bump(2);
    } else if (two == ">=") {
      t.kind = Tok::Ge;
      bump(2);
    } else if (two == ":=") {
      t.kind = Tok::AssignNext;
      bump(2);
    } else {
      switch (c) {
        case ';': t.kind = Tok::Semi; break;
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        case '*': t.kind = Tok::Star; break;
        case '+': t.kind = Tok::Plus; break;
        case '-': t.kind = Tok::Minus; break;
        case '.': t.kind = Tok::Dot; break;
        case ':': t.kind = Tok::Colon; break;
        case '\'': t.kind = Tok::Prime; break;
        case '=': t.kind = Tok::Eq; break;
        case '<': t.kind = Tok::Lt; break;
        case '>': t.kind = Tok::Gt; break;
        default:
          throw ParseError(line, col, std::string("unexpected character '") + c + "'");
      }
      bump(1);
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Tok::End;
  end.line = line;
  end.col = col;
  out.push_back(std::move(end));
  return out;
}

// Records how each not-yet-declared name must be sorted, from the contexts
// where it occurs. Names nothing constrains default to int.
struct SortSolver {
  std::map<std::string, Sort> resolved;
  std::vector<std::pair<std::string, std::string>> equal_names;
  bool changed = false;

  void require(const std::string& name, Sort s, const std::map<std::string, Sort>& declared) {
    if (declared.count(name)) return;
    auto [it, inserted] = resolved.emplace(name, s);
    if (inserted) changed = true;
  }
};

class Parser {
 public:
  Parser(const std::string& text, SymbolTable& table) : toks_(lex(text)), table_(table) {}

  FormulaPtr formula_top() {
    FormulaPtr f = parse_formula_rule();
    expect_end();
    resolve_sorts(&f, nullptr);
    return f;
  }

  ExprPtr expr_top() {
    ExprPtr e = parse_expr_rule();
    expect_end();
    resolve_sorts(nullptr, &e);
    return e;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  SymbolTable& table_;
  // names bound by enclosing exists, with their annotated sorts
  std::vector<std::pair<std::string, Sort>> scope_;
  std::set<std::string> unknown_;

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token& advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_kw(const char* kw) const {
    return peek().kind == Tok::Keyword && peek().text == kw;
  }
  bool eat(Tok k) {
    if (!at(k)) return false;
    advance();
    return true;
  }
  bool eat_kw(const char* kw) {
    if (!at_kw(kw)) return false;
    advance();
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(peek().line, peek().col, msg);
  }
  void expect(Tok k, const char* what) {
    if (!eat(k)) fail(std::string("expected ") + what);
  }
  void expect_end() {
    if (!at(Tok::End)) fail("unexpected trailing input");
  }

  std::optional<Sort> lookup(const std::string& name) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->first == name) return it->second;
    }
    auto it = table_.sorts.find(name);
    if (it != table_.sorts.end()) return it->second;
    return std::nullopt;
  }

  VarName make_name(const std::string& name) {
    if (auto s = lookup(name)) return VarName{name, *s};
    if (!table_.infer_sorts) fail("undeclared variable " + name);
    unknown_.insert(name);
    return VarName{name, Sort::Int};  // provisional; fixed by resolve_sorts
  }

  // ---- formulas ----

  FormulaPtr parse_formula_rule() {  // chop level
    FormulaPtr f = parse_iff();
    while (eat(Tok::Semi)) f = f_chop(f, parse_iff());
    return f;
  }

  FormulaPtr parse_iff() {
    FormulaPtr f = parse_implies();
    while (eat(Tok::Iff)) f = f_iff(f, parse_implies());
    return f;
  }

  FormulaPtr parse_implies() {
    FormulaPtr f = parse_or();
    if (eat(Tok::Implies)) return f_implies(f, parse_implies());
    return f;
  }

  FormulaPtr parse_or() {
    FormulaPtr f = parse_and();
    while (eat_kw("or")) f = f_or(f, parse_and());
    return f;
  }

  FormulaPtr parse_and() {
    FormulaPtr f = parse_unary();
    while (eat_kw("and")) f = f_and(f, parse_unary());
    return f;
  }

  FormulaPtr parse_unary() {
    if (peek().kind == Tok::Keyword) {
      const std::string& kw = peek().text;
      // fin.V and prev.V are expressions, not prefixes
      bool expr_form = (kw == "fin" || kw == "prev") && peek(1).kind == Tok::Dot;
      if (!expr_form) {
        if (kw == "not") { advance(); return f_not(parse_unary()); }
        if (kw == "next") { advance(); return f_next(parse_unary()); }
        if (kw == "wnext") { advance(); return f_wnext(parse_unary()); }
        if (kw == "prev") { advance(); return f_prev(parse_unary()); }
        if (kw == "wprev") { advance(); return f_wprev(parse_unary()); }
        if (kw == "box") { advance(); return f_box(parse_unary()); }
        if (kw == "diamond") { advance(); return f_diamond(parse_unary()); }
        if (kw == "boxi") { advance(); return f_box_i(parse_unary()); }
        if (kw == "diamondi") { advance(); return f_diamond_i(parse_unary()); }
        if (kw == "boxa") { advance(); return f_box_a(parse_unary()); }
        if (kw == "diamonda") { advance(); return f_diamond_a(parse_unary()); }
        if (kw == "init") { advance(); return f_init(parse_unary()); }
        if (kw == "fin") { advance(); return f_fin(parse_unary()); }
        if (kw == "halt") { advance(); return f_halt(parse_unary()); }
        if (kw == "keep") { advance(); return f_keep(parse_unary()); }
        if (kw == "initonly") { advance(); return f_initonly(parse_unary()); }
      }
    }
    return parse_star();
  }

  FormulaPtr parse_star() {
    FormulaPtr f = parse_atom();
    while (eat(Tok::Star)) f = f_star(f);
    return f;
  }

  static bool starts_expr_continuation(Tok k) {
    switch (k) {
      case Tok::Eq:
      case Tok::Lt:
      case Tok::Le:
      case Tok::Gt:
      case Tok::Ge:
      case Tok::AssignNext:
      case Tok::AssignFin:
      case Tok::AssignPrev:
      case Tok::Plus:
      case Tok::Minus:
      case Tok::Prime:
        return true;
      default:
        return false;
    }
  }

  FormulaPtr parse_atom() {
    if (at_kw("true")) { advance(); return f_true(); }
    if (at_kw("false")) { advance(); return pred(e_bool(false)); }
    if (at_kw("skip")) { advance(); return f_skip(); }
    if (at_kw("empty")) { advance(); return f_empty(); }
    if (at_kw("more")) { advance(); return f_more(); }
    if (at_kw("len")) {
      advance();
      expect(Tok::LParen, "(");
      if (!at(Tok::Int)) fail("expected a length");
      std::int64_t n = advance().value;
      expect(Tok::RParen, ")");
      return f_len(static_cast<unsigned>(n));
    }
    if (at_kw("exists")) {
      advance();
      if (!at(Tok::Ident)) fail("expected a variable after exists");
      std::string name = advance().text;
      expect(Tok::Colon, ":");
      Sort s;
      if (eat_kw("int")) s = Sort::Int;
      else if (eat_kw("bool")) s = Sort::Bool;
      else fail("expected int or bool");
      expect(Tok::Dot, ".");
      scope_.emplace_back(name, s);
      FormulaPtr body = parse_formula_rule();
      scope_.pop_back();
      return f_exists(VarName{name, s}, body);
    }
    if (at_kw("if")) {
      advance();
      FormulaPtr c = parse_formula_rule();
      if (!eat_kw("then")) fail("expected then");
      FormulaPtr t = parse_formula_rule();
      if (!eat_kw("else")) fail("expected else");
      FormulaPtr e = parse_formula_rule();
      return f_if(c, t, e);
    }
    if (at_kw("while")) {
      advance();
      FormulaPtr c = parse_formula_rule();
      if (!eat_kw("do")) fail("expected do");
      FormulaPtr b = parse_formula_rule();
      return f_while(c, b);
    }
    if (at(Tok::LParen)) {
      // Either a parenthesised formula or a parenthesised expression; try the
      // formula reading and fall back when the closing paren is followed by
      // an operator that can only continue an expression.
      std::size_t save = pos_;
      std::size_t scope_depth = scope_.size();
      auto saved_unknown = unknown_;
      try {
        advance();
        FormulaPtr f = parse_formula_rule();
        expect(Tok::RParen, ")");
        if (!starts_expr_continuation(peek().kind)) return f;
      } catch (const ParseError&) {
      }
      pos_ = save;
      scope_.resize(scope_depth);
      unknown_ = std::move(saved_unknown);
      return parse_rel_or_assign();
    }
    return parse_rel_or_assign();
  }

  FormulaPtr parse_rel_or_assign() {
    ExprPtr lhs = parse_expr_rule();
    Tok k = peek().kind;
    if (k == Tok::Eq) {
      advance();
      ExprPtr rhs = parse_expr_rule();
      if (lhs->kind == ExprKind::Var) return assign(lhs->var, rhs);
      return pred(e_eq(lhs, rhs));
    }
    if (k == Tok::Lt || k == Tok::Le || k == Tok::Gt || k == Tok::Ge) {
      advance();
      ExprPtr rhs = parse_expr_rule();
      const char* op = k == Tok::Lt ? "<" : k == Tok::Le ? "<=" : k == Tok::Gt ? ">" : ">=";
      return pred(e_apply(op, {lhs, rhs}));
    }
    auto target = [&]() -> VarName {
      if (lhs->kind != ExprKind::Var) fail("assignment target must be a variable");
      return lhs->var;
    };
    if (eat(Tok::AssignNext)) return unit_assign(target(), parse_expr_rule());
    if (eat(Tok::AssignFin)) return temp_assign(target(), parse_expr_rule());
    if (eat(Tok::AssignPrev)) return past_assign(target(), parse_expr_rule());
    if (eat_kw("gets")) return gets(target(), parse_expr_rule());
    return pred(lhs);
  }

  // ---- expressions ----

  ExprPtr parse_expr_rule() { return parse_add(); }

  ExprPtr parse_add() {
    ExprPtr e = parse_mul();
    while (true) {
      if (eat(Tok::Plus)) e = e_add(e, parse_mul());
      else if (eat(Tok::Minus)) e = e_sub(e, parse_mul());
      else return e;
    }
  }

  ExprPtr parse_mul() {
    ExprPtr e = parse_unary_expr();
    while (true) {
      if (eat(Tok::Star)) e = e_mul(e, parse_unary_expr());
      else if (eat_kw("div")) e = e_div(e, parse_unary_expr());
      else if (eat_kw("mod")) e = e_mod(e, parse_unary_expr());
      else return e;
    }
  }

  ExprPtr parse_unary_expr() {
    if (eat(Tok::Minus)) {
      ExprPtr e = parse_unary_expr();
      if (e->kind == ExprKind::ConstInt) return e_int(-e->int_val);
      return e_sub(e_int(0), e);
    }
    return parse_prim_expr();
  }

  ExprPtr parse_prim_expr() {
    if (at(Tok::Int)) return e_int(advance().value);
    if (at_kw("true")) { advance(); return e_bool(true); }
    if (at_kw("false")) { advance(); return e_bool(false); }
    if (at_kw("fin") || at_kw("prev")) {
      bool is_fin = peek().text == "fin";
      advance();
      expect(Tok::Dot, ".");
      if (!at(Tok::Ident)) fail("expected a variable");
      VarName v = make_name(advance().text);
      return is_fin ? e_fin(v) : e_prev(v);
    }
    if (at(Tok::Ident)) {
      VarName v = make_name(advance().text);
      if (eat(Tok::Prime)) return e_next(v);
      return e_var(v);
    }
    if (eat(Tok::LParen)) {
      ExprPtr e = parse_expr_rule();
      expect(Tok::RParen, ")");
      return e;
    }
    fail("expected an expression");
  }

  // ---- sort resolution for inferred names ----

  std::optional<Sort> expr_sort(const Expr& e, const std::map<std::string, Sort>& sorts) const {
    switch (e.kind) {
      case ExprKind::ConstInt: return Sort::Int;
      case ExprKind::ConstBool: return Sort::Bool;
      case ExprKind::Var:
      case ExprKind::NextVar:
      case ExprKind::FinVar:
      case ExprKind::PrevVar: {
        if (!unknown_.count(e.var.name)) return e.var.sort;
        auto it = sorts.find(e.var.name);
        if (it != sorts.end()) return it->second;
        return std::nullopt;
      }
      case ExprKind::Apply: {
        const Operator* op = find_operator(e.op);
        return op ? std::optional<Sort>(op->result) : std::nullopt;
      }
    }
    return std::nullopt;
  }

  void constrain_expr(const Expr& e, std::optional<Sort> expected,
                      std::map<std::string, Sort>& sorts, bool& changed) const {
    switch (e.kind) {
      case ExprKind::Var:
      case ExprKind::NextVar:
      case ExprKind::FinVar:
      case ExprKind::PrevVar:
        if (expected && unknown_.count(e.var.name) && !sorts.count(e.var.name)) {
          sorts.emplace(e.var.name, *expected);
          changed = true;
        }
        return;
      case ExprKind::Apply: {
        const Operator* op = find_operator(e.op);
        if (!op) return;
        if (op->poly_eq) {
          auto sa = expr_sort(*e.args[0], sorts);
          auto sb = expr_sort(*e.args[1], sorts);
          constrain_expr(*e.args[0], sb, sorts, changed);
          constrain_expr(*e.args[1], sa, sorts, changed);
        } else {
          for (std::size_t i = 0; i < e.args.size() && i < op->params.size(); ++i)
            constrain_expr(*e.args[i], op->params[i], sorts, changed);
        }
        return;
      }
      default:
        return;
    }
  }

  void constrain_formula(const Formula& f, std::map<std::string, Sort>& sorts,
                         bool& changed) const {
    switch (f.kind) {
      case FormulaKind::Pred:
        constrain_expr(*f.expr, Sort::Bool, sorts, changed);
        break;
      case FormulaKind::Assign:
      case FormulaKind::UnitAssign:
      case FormulaKind::TempAssign:
      case FormulaKind::PastAssign:
      case FormulaKind::Gets: {
        auto es = expr_sort(*f.expr, sorts);
        if (es && unknown_.count(f.var.name) && !sorts.count(f.var.name)) {
          sorts.emplace(f.var.name, *es);
          changed = true;
        }
        std::optional<Sort> vs;
        if (!unknown_.count(f.var.name)) vs = f.var.sort;
        else if (auto it = sorts.find(f.var.name); it != sorts.end()) vs = it->second;
        constrain_expr(*f.expr, vs, sorts, changed);
        break;
      }
      default:
        break;
    }
    for (const auto& k : f.kids) constrain_formula(*k, sorts, changed);
  }

  ExprPtr rebuild_expr(const ExprPtr& e, const std::map<std::string, Sort>& sorts,
                       std::set<std::string>& shadowed) const {
    switch (e->kind) {
      case ExprKind::Var:
      case ExprKind::NextVar:
      case ExprKind::FinVar:
      case ExprKind::PrevVar: {
        const std::string& n = e->var.name;
        if (!unknown_.count(n) || shadowed.count(n)) return e;
        auto it = sorts.find(n);
        Sort s = it == sorts.end() ? Sort::Int : it->second;
        if (s == e->var.sort) return e;
        VarName v{n, s};
        switch (e->kind) {
          case ExprKind::Var: return e_var(v);
          case ExprKind::NextVar: return e_next(v);
          case ExprKind::FinVar: return e_fin(v);
          default: return e_prev(v);
        }
      }
      case ExprKind::Apply: {
        std::vector<ExprPtr> args;
        args.reserve(e->args.size());
        for (const auto& a : e->args) args.push_back(rebuild_expr(a, sorts, shadowed));
        return e_apply(e->op, std::move(args));
      }
      default:
        return e;
    }
  }

  FormulaPtr rebuild_formula(const FormulaPtr& f, const std::map<std::string, Sort>& sorts,
                             std::set<std::string>& shadowed) const {
    auto g = std::make_shared<Formula>(*f);
    if (f->kind == FormulaKind::Exists) {
      bool added = shadowed.insert(f->var.name).second;
      g->kids = {rebuild_formula(f->kids[0], sorts, shadowed)};
      if (added) shadowed.erase(f->var.name);
      return g;
    }
    if (g->expr) g->expr = rebuild_expr(g->expr, sorts, shadowed);
    bool has_target = f->kind == FormulaKind::Assign || f->kind == FormulaKind::UnitAssign ||
                      f->kind == FormulaKind::TempAssign || f->kind == FormulaKind::PastAssign ||
                      f->kind == FormulaKind::Gets;
    if (has_target && unknown_.count(f->var.name) && !shadowed.count(f->var.name)) {
      auto it = sorts.find(f->var.name);
      g->var.sort = it == sorts.end() ? Sort::Int : it->second;
    }
    std::vector<FormulaPtr> kids;
    kids.reserve(f->kids.size());
    for (const auto& k : f->kids) kids.push_back(rebuild_formula(k, sorts, shadowed));
    g->kids = std::move(kids);
    return g;
  }

  void resolve_sorts(FormulaPtr* f, ExprPtr* e) {
    std::map<std::string, Sort> sorts;
    bool changed = true;
    while (changed) {
      changed = false;
      if (f) constrain_formula(**f, sorts, changed);
      if (e) constrain_expr(**e, std::nullopt, sorts, changed);
    }
    std::set<std::string> shadowed;
    if (f) *f = rebuild_formula(*f, sorts, shadowed);
    if (e) *e = rebuild_expr(*e, sorts, shadowed);
    for (const auto& n : unknown_) {
      auto it = sorts.find(n);
      table_.sorts.emplace(n, it == sorts.end() ? Sort::Int : it->second);
    }
  }
};

}  // namespace

FormulaPtr parse_formula(const std::string& text, SymbolTable& table) {
  Parser p(text, table);
  return p.formula_top();
}

FormulaPtr parse_formula(const std::string& text) {
  SymbolTable table;
  return parse_formula(text, table);
}

ExprPtr parse_expr(const std::string& text, SymbolTable& table) {
  Parser p(text, table);
  return p.expr_top();
}

}  // namespace itl
