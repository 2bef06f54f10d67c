#include "fiplus/pretty.hpp"

#include <sstream>

namespace fiplus {

namespace {

// Type precedence levels: 0 = forall/arrow, 1 = intersection, 2 = atom.
int typeLevel(const TypeRef& t) {
  switch (t->tag) {
    case TypeTag::Arrow:
    case TypeTag::Forall:
      return 0;
    case TypeTag::Inter:
      return 1;
    default:
      return 2;
  }
}

void printType(std::ostream& os, const TypeRef& t, int minLevel) {
  bool paren = typeLevel(t) < minLevel;
  if (paren) os << '(';
  switch (t->tag) {
    case TypeTag::Int:
      os << "Int";
      break;
    case TypeTag::Bool:
      os << "Bool";
      break;
    case TypeTag::String:
      os << "String";
      break;
    case TypeTag::Top:
      os << "Top";
      break;
    case TypeTag::Bot:
      os << "Bot";
      break;
    case TypeTag::Var:
      os << t->name;
      break;
    case TypeTag::Arrow:
      printType(os, t->lhs, 1);
      os << " -> ";
      printType(os, t->rhs, 0);  // right associative
      break;
    case TypeTag::Inter:
      printType(os, t->lhs, 1);
      os << " & ";
      printType(os, t->rhs, 2);  // left associative
      break;
    case TypeTag::Forall:
      os << "forall " << t->name << " * ";
      printType(os, t->lhs, 1);
      os << ". ";
      printType(os, t->rhs, 0);
      break;
    case TypeTag::Rcd:
      os << '{' << t->name << " : ";
      printType(os, t->lhs, 0);
      os << '}';
      break;
  }
  if (paren) os << ')';
}

// Expr precedence levels: 0 = merge, 1 = annotation, 2 = application,
// 3 = projection/atom. Lambda-likes report level 0 so any operand position
// forces parentheses around them.
int exprLevel(const ExprRef& e) {
  switch (e->tag) {
    case ExprTag::Merge:
    case ExprTag::Lam:
    case ExprTag::TLam:
    case ExprTag::Fix:
      return 0;
    case ExprTag::Anno:
      return 1;
    case ExprTag::App:
    case ExprTag::TApp:
      return 2;
    default:
      return 3;
  }
}

void escapeInto(std::ostream& os, const std::string& s) {
  for (char c : s) {
    switch (c) {
      case '"': os << "\\\""; break;
      case '\\': os << "\\\\"; break;
      case '\n': os << "\\n"; break;
      case '\t': os << "\\t"; break;
      default: os << c; break;
    }
  }
}

void printExpr(std::ostream& os, const ExprRef& e, int minLevel) {
  bool paren = exprLevel(e) < minLevel;
  if (paren) os << '(';
  switch (e->tag) {
    case ExprTag::Var:
      os << e->name;
      break;
    case ExprTag::LitInt:
      os << e->intVal;
      break;
    case ExprTag::LitBool:
      os << (e->boolVal ? "true" : "false");
      break;
    case ExprTag::LitStr:
      os << '"';
      escapeInto(os, e->strVal);
      os << '"';
      break;
    case ExprTag::TopVal:
      os << "()";
      break;
    case ExprTag::Lam:
      os << '\\' << e->name << ':';
      printType(os, e->type, 0);
      os << ". ";
      printExpr(os, e->e1, 0);
      break;
    case ExprTag::TLam:
      os << "/\\" << e->name << ". ";
      printExpr(os, e->e1, 0);
      break;
    case ExprTag::Fix:
      os << "fix " << e->name << ':';
      printType(os, e->type, 0);
      os << ". ";
      printExpr(os, e->e1, 0);
      break;
    case ExprTag::RcdE:
      os << '{' << e->name << " = ";
      printExpr(os, e->e1, 0);
      os << '}';
      break;
    case ExprTag::Anno:
      printExpr(os, e->e1, 2);
      os << " : ";
      printType(os, e->type, 0);
      break;
    case ExprTag::Merge: {
      // A lambda-like on the left would swallow ",, ..." into its body.
      bool lamLike = e->e1->tag == ExprTag::Lam || e->e1->tag == ExprTag::TLam ||
                     e->e1->tag == ExprTag::Fix;
      printExpr(os, e->e1, lamLike ? 1 : 0);
      os << " ,, ";
      printExpr(os, e->e2, 1);  // left associative
      break;
    }
    case ExprTag::App:
      printExpr(os, e->e1, 2);
      os << ' ';
      printExpr(os, e->e2, 3);
      break;
    case ExprTag::TApp:
      printExpr(os, e->e1, 2);
      os << " @";
      printType(os, e->type, 2);
      break;
    case ExprTag::Proj:
      printExpr(os, e->e1, 3);
      os << '.' << e->name;
      break;
  }
  if (paren) os << ')';
}

}  // namespace

std::string prettyType(const TypeRef& t) {
  std::ostringstream os;
  printType(os, t, 0);
  return os.str();
}

std::string prettyExpr(const ExprRef& e) {
  std::ostringstream os;
  printExpr(os, e, 0);
  return os.str();
}

}  // namespace fiplus
