#include <sstream>

#include "itl/errors.hpp"
#include "itl/parser.hpp"

namespace itl {

namespace {

// Expression levels: relations 0, additive 1, multiplicative 2, atoms 4.
void print_expr(std::ostringstream& os, const Expr& e, int min_prec);

void print_expr_infix(std::ostringstream& os, const Expr& e, const char* op, int prec,
                      int min_prec) {
  bool parens = prec < min_prec;
  if (parens) os << '(';
  print_expr(os, *e.args[0], prec);
  os << ' ' << op << ' ';
  print_expr(os, *e.args[1], prec + 1);
  if (parens) os << ')';
}

void print_expr(std::ostringstream& os, const Expr& e, int min_prec) {
  switch (e.kind) {
    case ExprKind::ConstInt:
      if (e.int_val < 0 && min_prec > 1) {
        os << '(' << e.int_val << ')';
      } else {
        os << e.int_val;
      }
      return;
    case ExprKind::ConstBool:
      os << (e.bool_val ? "true" : "false");
      return;
    case ExprKind::Var:
      os << e.var.name;
      return;
    case ExprKind::NextVar:
      os << e.var.name << '\'';
      return;
    case ExprKind::FinVar:
      os << "fin." << e.var.name;
      return;
    case ExprKind::PrevVar:
      os << "prev." << e.var.name;
      return;
    case ExprKind::Apply: {
      const std::string& op = e.op;
      if (op == "+" || op == "-") return print_expr_infix(os, e, op.c_str(), 1, min_prec);
      if (op == "*" || op == "div" || op == "mod")
        return print_expr_infix(os, e, op.c_str(), 2, min_prec);
      if (op == "=" || op == "<" || op == "<=" || op == ">" || op == ">=")
        return print_expr_infix(os, e, op.c_str(), 0, min_prec);
      // Operators without concrete syntax print functionally.
      os << op << '(';
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) os << ", ";
        print_expr(os, *e.args[i], 0);
      }
      os << ')';
      return;
    }
  }
}

// Formula levels: if/while/exists 0, chop 1, iff 2, implies 3, or 4, and 5,
// prefix operators 6, chop-star 7, atoms 8.
void print_formula(std::ostringstream& os, const Formula& f, int min_prec);

void print_binary(std::ostringstream& os, const Formula& f, const char* op, int prec,
                  bool right_assoc, int min_prec) {
  bool parens = prec < min_prec;
  if (parens) os << '(';
  print_formula(os, *f.kids[0], right_assoc ? prec + 1 : prec);
  os << ' ' << op << ' ';
  print_formula(os, *f.kids[1], right_assoc ? prec : prec + 1);
  if (parens) os << ')';
}

void print_prefix(std::ostringstream& os, const Formula& f, const char* op, int min_prec) {
  bool parens = 6 < min_prec;
  if (parens) os << '(';
  os << op << ' ';
  print_formula(os, *f.kids[0], 6);
  if (parens) os << ')';
}

void print_assign(std::ostringstream& os, const Formula& f, const char* op, int min_prec) {
  bool parens = 6 < min_prec;
  if (parens) os << '(';
  os << f.var.name << ' ' << op << ' ';
  print_expr(os, *f.expr, 1);
  if (parens) os << ')';
}

void print_formula(std::ostringstream& os, const Formula& f, int min_prec) {
  switch (f.kind) {
    case FormulaKind::True:
      os << "true";
      return;
    case FormulaKind::Pred: {
      bool parens = 6 < min_prec;
      if (parens) os << '(';
      print_expr(os, *f.expr, 0);
      if (parens) os << ')';
      return;
    }
    case FormulaKind::Not:
      return print_prefix(os, f, "not", min_prec);
    case FormulaKind::And:
      return print_binary(os, f, "and", 5, false, min_prec);
    case FormulaKind::Exists: {
      bool parens = 0 < min_prec;
      if (parens) os << '(';
      os << "exists " << f.var.name << " : " << sort_name(f.var.sort) << " . ";
      print_formula(os, *f.kids[0], 0);
      if (parens) os << ')';
      return;
    }
    case FormulaKind::Skip:
      os << "skip";
      return;
    case FormulaKind::Chop:
      return print_binary(os, f, ";", 1, false, min_prec);
    case FormulaKind::ChopStar: {
      bool parens = 7 < min_prec;
      if (parens) os << '(';
      print_formula(os, *f.kids[0], 7);
      os << '*';
      if (parens) os << ')';
      return;
    }
    case FormulaKind::Or:
      return print_binary(os, f, "or", 4, false, min_prec);
    case FormulaKind::Implies:
      return print_binary(os, f, "=>", 3, true, min_prec);
    case FormulaKind::Iff:
      return print_binary(os, f, "<=>", 2, false, min_prec);
    case FormulaKind::Next:
      return print_prefix(os, f, "next", min_prec);
    case FormulaKind::WNext:
      return print_prefix(os, f, "wnext", min_prec);
    case FormulaKind::Prev:
      return print_prefix(os, f, "prev", min_prec);
    case FormulaKind::WPrev:
      return print_prefix(os, f, "wprev", min_prec);
    case FormulaKind::Diamond:
      return print_prefix(os, f, "diamond", min_prec);
    case FormulaKind::Box:
      return print_prefix(os, f, "box", min_prec);
    case FormulaKind::DiamondI:
      return print_prefix(os, f, "diamondi", min_prec);
    case FormulaKind::BoxI:
      return print_prefix(os, f, "boxi", min_prec);
    case FormulaKind::DiamondA:
      return print_prefix(os, f, "diamonda", min_prec);
    case FormulaKind::BoxA:
      return print_prefix(os, f, "boxa", min_prec);
    case FormulaKind::Empty:
      os << "empty";
      return;
    case FormulaKind::More:
      os << "more";
      return;
    case FormulaKind::Assign:
      return print_assign(os, f, "=", min_prec);
    case FormulaKind::UnitAssign:
      return print_assign(os, f, ":=", min_prec);
    case FormulaKind::TempAssign:
      return print_assign(os, f, "<-", min_prec);
    case FormulaKind::PastAssign:
      return print_assign(os, f, "=:", min_prec);
    case FormulaKind::Gets:
      return print_assign(os, f, "gets", min_prec);
    case FormulaKind::If: {
      bool parens = 0 < min_prec;
      if (parens) os << '(';
      os << "if ";
      print_formula(os, *f.kids[0], 0);
      os << " then ";
      print_formula(os, *f.kids[1], 0);
      os << " else ";
      print_formula(os, *f.kids[2], 0);
      if (parens) os << ')';
      return;
    }
    case FormulaKind::Len:
      os << "len(" << f.len_n << ')';
      return;
    case FormulaKind::Fin:
      return print_prefix(os, f, "fin", min_prec);
    case FormulaKind::Init:
      return print_prefix(os, f, "init", min_prec);
    case FormulaKind::Halt:
      return print_prefix(os, f, "halt", min_prec);
    case FormulaKind::Keep:
      return print_prefix(os, f, "keep", min_prec);
    case FormulaKind::InitOnly:
      return print_prefix(os, f, "initonly", min_prec);
    case FormulaKind::While: {
      bool parens = 0 < min_prec;
      if (parens) os << '(';
      os << "while ";
      print_formula(os, *f.kids[0], 0);
      os << " do ";
      print_formula(os, *f.kids[1], 0);
      if (parens) os << ')';
      return;
    }
  }
}

const char* kind_name(FormulaKind k) {
  switch (k) {
    case FormulaKind::True: return "True";
    case FormulaKind::Pred: return "Pred";
    case FormulaKind::Not: return "Not";
    case FormulaKind::And: return "And";
    case FormulaKind::Exists: return "Exists";
    case FormulaKind::Skip: return "Skip";
    case FormulaKind::Chop: return "Chop";
    case FormulaKind::ChopStar: return "ChopStar";
    case FormulaKind::Or: return "Or";
    case FormulaKind::Implies: return "Implies";
    case FormulaKind::Iff: return "Iff";
    case FormulaKind::Next: return "Next";
    case FormulaKind::WNext: return "WNext";
    case FormulaKind::Prev: return "Prev";
    case FormulaKind::WPrev: return "WPrev";
    case FormulaKind::Diamond: return "Diamond";
    case FormulaKind::Box: return "Box";
    case FormulaKind::DiamondI: return "DiamondI";
    case FormulaKind::BoxI: return "BoxI";
    case FormulaKind::DiamondA: return "DiamondA";
    case FormulaKind::BoxA: return "BoxA";
    case FormulaKind::Empty: return "Empty";
    case FormulaKind::More: return "More";
    case FormulaKind::Assign: return "Assign";
    case FormulaKind::UnitAssign: return "UnitAssign";
    case FormulaKind::TempAssign: return "TempAssign";
    case FormulaKind::PastAssign: return "PastAssign";
    case FormulaKind::Gets: return "Gets";
    case FormulaKind::If: return "If";
    case FormulaKind::Len: return "Len";
    case FormulaKind::Fin: return "Fin";
    case FormulaKind::Init: return "Init";
    case FormulaKind::Halt: return "Halt";
    case FormulaKind::Keep: return "Keep";
    case FormulaKind::InitOnly: return "InitOnly";
    case FormulaKind::While: return "While";
  }
  return "?";
}

void dump_rec(std::ostringstream& os, const Formula& f, int depth) {
  for (int i = 0; i < depth; ++i) os << "  ";
  os << kind_name(f.kind);
  switch (f.kind) {
    case FormulaKind::Exists:
    case FormulaKind::Assign:
    case FormulaKind::UnitAssign:
    case FormulaKind::TempAssign:
    case FormulaKind::PastAssign:
    case FormulaKind::Gets:
      os << ' ' << f.var.name << " : " << sort_name(f.var.sort);
      break;
    case FormulaKind::Len:
      os << ' ' << f.len_n;
      break;
    default:
      break;
  }
  if (f.expr) os << "  " << print(*f.expr);
  os << '\n';
  for (const auto& k : f.kids) dump_rec(os, *k, depth + 1);
}

}  // namespace

std::string print(const Formula& f) {
  std::ostringstream os;
  print_formula(os, f, 0);
  return os.str();
}

std::string print(const Expr& e) {
  std::ostringstream os;
  print_expr(os, e, 0);
  return os.str();
}

std::string ast_dump(const Formula& f) {
  std::ostringstream os;
  dump_rec(os, f, 0);
  return os.str();
}

}  // namespace itl
