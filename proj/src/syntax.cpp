#include "fiplus/syntax.hpp"

#include <algorithm>
#include <set>

namespace fiplus {

namespace {
TypeRef mkT(TypeTag tag, std::string name = {}, TypeRef l = nullptr,
            TypeRef r = nullptr) {
  auto t = std::make_shared<Type>();
  t->tag = tag;
  t->name = std::move(name);
  t->lhs = std::move(l);
  t->rhs = std::move(r);
  return t;
}

}  // namespace

TypeRef tInt() {
  static const TypeRef t = mkT(TypeTag::Int);
  return t;
}
TypeRef tBool() {
  static const TypeRef t = mkT(TypeTag::Bool);
  return t;
}
TypeRef tString() {
  static const TypeRef t = mkT(TypeTag::String);
  return t;
}
TypeRef tTop() {
  static const TypeRef t = mkT(TypeTag::Top);
  return t;
}
TypeRef tBot() {
  static const TypeRef t = mkT(TypeTag::Bot);
  return t;
}
TypeRef tVar(std::string name) { return mkT(TypeTag::Var, std::move(name)); }
TypeRef tArrow(TypeRef dom, TypeRef cod) {
  return mkT(TypeTag::Arrow, {}, std::move(dom), std::move(cod));
}
TypeRef tInter(TypeRef l, TypeRef r) {
  return mkT(TypeTag::Inter, {}, std::move(l), std::move(r));
}
TypeRef tForall(std::string binder, TypeRef bound, TypeRef body) {
  return mkT(TypeTag::Forall, std::move(binder), std::move(bound),
             std::move(body));
}
TypeRef tRcd(std::string label, TypeRef field) {
  return mkT(TypeTag::Rcd, std::move(label), std::move(field));
}

ExprRef eVar(std::string name) {
  Expr e{};
  e.tag = ExprTag::Var;
  e.name = std::move(name);
  return std::make_shared<Expr>(std::move(e));
}
ExprRef eInt(long long v) {
  Expr e{};
  e.tag = ExprTag::LitInt;
  e.intVal = v;
  return std::make_shared<Expr>(std::move(e));
}
ExprRef eBool(bool v) {
  Expr e{};
  e.tag = ExprTag::LitBool;
  e.boolVal = v;
  return std::make_shared<Expr>(std::move(e));
}
ExprRef eStr(std::string v) {
  Expr e{};
  e.tag = ExprTag::LitStr;
  e.strVal = std::move(v);
  return std::make_shared<Expr>(std::move(e));
}
ExprRef eTop() {
  Expr e{};
  e.tag = ExprTag::TopVal;
  return std::make_shared<Expr>(std::move(e));
}
ExprRef eLam(std::string param, TypeRef paramType, ExprRef body) {
  Expr e{};
  e.tag = ExprTag::Lam;
  e.name = std::move(param);
  e.type = std::move(paramType);
  e.e1 = std::move(body);
  return std::make_shared<Expr>(std::move(e));
}
ExprRef eTLam(std::string binder, ExprRef body) {
  Expr e{};
  e.tag = ExprTag::TLam;
  e.name = std::move(binder);
  e.e1 = std::move(body);
  return std::make_shared<Expr>(std::move(e));
}
ExprRef eRcd(std::string label, ExprRef body) {
  Expr e{};
  e.tag = ExprTag::RcdE;
  e.name = std::move(label);
  e.e1 = std::move(body);
  return std::make_shared<Expr>(std::move(e));
}
ExprRef eAnno(ExprRef body, TypeRef ty) {
  Expr e{};
  e.tag = ExprTag::Anno;
  e.e1 = std::move(body);
  e.type = std::move(ty);
  return std::make_shared<Expr>(std::move(e));
}
ExprRef eMerge(ExprRef l, ExprRef r) {
  Expr e{};
  e.tag = ExprTag::Merge;
  e.e1 = std::move(l);
  e.e2 = std::move(r);
  return std::make_shared<Expr>(std::move(e));
}
ExprRef eFix(std::string self, TypeRef ty, ExprRef body) {
  Expr e{};
  e.tag = ExprTag::Fix;
  e.name = std::move(self);
  e.type = std::move(ty);
  e.e1 = std::move(body);
  return std::make_shared<Expr>(std::move(e));
}
ExprRef eApp(ExprRef fn, ExprRef arg) {
  Expr e{};
  e.tag = ExprTag::App;
  e.e1 = std::move(fn);
  e.e2 = std::move(arg);
  return std::make_shared<Expr>(std::move(e));
}
ExprRef eTApp(ExprRef fn, TypeRef argType) {
  Expr e{};
  e.tag = ExprTag::TApp;
  e.e1 = std::move(fn);
  e.type = std::move(argType);
  return std::make_shared<Expr>(std::move(e));
}
ExprRef eProj(ExprRef target, std::string label) {
  Expr e{};
  e.tag = ExprTag::Proj;
  e.e1 = std::move(target);
  e.name = std::move(label);
  return std::make_shared<Expr>(std::move(e));
}

ExprRef withSpan(ExprRef e, Span s) {
  auto copy = std::make_shared<Expr>(*e);
  copy->span = s;
  return copy;
}
TypeRef withSpan(TypeRef t, Span s) {
  auto copy = std::make_shared<Type>(*t);
  copy->span = s;
  return copy;
}

bool eqType(const TypeRef& a, const TypeRef& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->tag != b->tag) return false;
  switch (a->tag) {
    case TypeTag::Int:
    case TypeTag::Bool:
    case TypeTag::String:
    case TypeTag::Top:
    case TypeTag::Bot:
      return true;
    case TypeTag::Var:
      return a->name == b->name;
    case TypeTag::Arrow:
    case TypeTag::Inter:
      return eqType(a->lhs, b->lhs) && eqType(a->rhs, b->rhs);
    case TypeTag::Forall:
      return a->name == b->name && eqType(a->lhs, b->lhs) &&
             eqType(a->rhs, b->rhs);
    case TypeTag::Rcd:
      return a->name == b->name && eqType(a->lhs, b->lhs);
  }
  return false;
}

bool eqExpr(const ExprRef& a, const ExprRef& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->tag != b->tag) return false;
  switch (a->tag) {
    case ExprTag::Var:
      return a->name == b->name;
    case ExprTag::LitInt:
      return a->intVal == b->intVal;
    case ExprTag::LitBool:
      return a->boolVal == b->boolVal;
    case ExprTag::LitStr:
      return a->strVal == b->strVal;
    case ExprTag::TopVal:
      return true;
    case ExprTag::Lam:
      return a->name == b->name && eqType(a->type, b->type) &&
             eqExpr(a->e1, b->e1);
    case ExprTag::TLam:
      return a->name == b->name && eqExpr(a->e1, b->e1);
    case ExprTag::RcdE:
      return a->name == b->name && eqExpr(a->e1, b->e1);
    case ExprTag::Anno:
      return eqType(a->type, b->type) && eqExpr(a->e1, b->e1);
    case ExprTag::Merge:
      return eqExpr(a->e1, b->e1) && eqExpr(a->e2, b->e2);
    case ExprTag::Fix:
      return a->name == b->name && eqType(a->type, b->type) &&
             eqExpr(a->e1, b->e1);
    case ExprTag::App:
      return eqExpr(a->e1, b->e1) && eqExpr(a->e2, b->e2);
    case ExprTag::TApp:
      return eqType(a->type, b->type) && eqExpr(a->e1, b->e1);
    case ExprTag::Proj:
      return a->name == b->name && eqExpr(a->e1, b->e1);
  }
  return false;
}

bool TypeCtx::contains(const std::string& x) const {
  return lookup(x) != nullptr;
}
TypeRef TypeCtx::lookup(const std::string& x) const {
  for (auto it = binds.rbegin(); it != binds.rend(); ++it)
    if (it->first == x) return it->second;
  return nullptr;
}
TypeCtx TypeCtx::extended(std::string x, TypeRef bound) const {
  TypeCtx out = *this;
  out.binds.emplace_back(std::move(x), std::move(bound));
  return out;
}

bool TermCtx::contains(const std::string& x) const {
  return lookup(x) != nullptr;
}
TypeRef TermCtx::lookup(const std::string& x) const {
  for (auto it = binds.rbegin(); it != binds.rend(); ++it)
    if (it->first == x) return it->second;
  return nullptr;
}
TermCtx TermCtx::extended(std::string x, TypeRef ty) const {
  TermCtx out = *this;
  out.binds.emplace_back(std::move(x), std::move(ty));
  return out;
}

bool isPForm(const ExprRef& e) {
  return e->tag == ExprTag::Lam || e->tag == ExprTag::TLam ||
         e->tag == ExprTag::RcdE;
}

bool isValue(const ExprRef& e) {
  switch (e->tag) {
    case ExprTag::Lam:
    case ExprTag::TLam:
    case ExprTag::RcdE:
    case ExprTag::LitInt:
    case ExprTag::LitBool:
    case ExprTag::LitStr:
    case ExprTag::TopVal:
      return true;
    case ExprTag::Anno:
      return isPForm(e->e1);
    case ExprTag::Merge:
      return isValue(e->e1) && isValue(e->e2);
    default:
      return false;
  }
}

bool isPreValue(const ExprRef& e) {
  switch (e->tag) {
    case ExprTag::LitInt:
    case ExprTag::LitBool:
    case ExprTag::LitStr:
    case ExprTag::TopVal:
    case ExprTag::Anno:
      return true;
    case ExprTag::Merge:
      return isPreValue(e->e1) && isPreValue(e->e2);
    default:
      return false;
  }
}

SyntaxClass classify(const ExprRef& e) {
  return SyntaxClass{isValue(e), isPreValue(e)};
}

namespace {

void freeExprVarsInto(const ExprRef& e, std::vector<std::string>& bound,
                      std::set<std::string>& out) {
  switch (e->tag) {
    case ExprTag::Var:
      if (std::find(bound.begin(), bound.end(), e->name) == bound.end())
        out.insert(e->name);
      return;
    case ExprTag::Lam:
    case ExprTag::Fix:
      bound.push_back(e->name);
      freeExprVarsInto(e->e1, bound, out);
      bound.pop_back();
      return;
    default:
      if (e->e1) freeExprVarsInto(e->e1, bound, out);
      if (e->e2) freeExprVarsInto(e->e2, bound, out);
      return;
  }
}

void freeTypeVarsTInto(const TypeRef& t, std::vector<std::string>& bound,
                       std::set<std::string>& out) {
  switch (t->tag) {
    case TypeTag::Var:
      if (std::find(bound.begin(), bound.end(), t->name) == bound.end())
        out.insert(t->name);
      return;
    case TypeTag::Forall:
      freeTypeVarsTInto(t->lhs, bound, out);
      bound.push_back(t->name);
      freeTypeVarsTInto(t->rhs, bound, out);
      bound.pop_back();
      return;
    default:
      if (t->lhs) freeTypeVarsTInto(t->lhs, bound, out);
      if (t->rhs) freeTypeVarsTInto(t->rhs, bound, out);
      return;
  }
}

void freeTypeVarsEInto(const ExprRef& e, std::vector<std::string>& bound,
                       std::set<std::string>& out) {
  if (e->type) freeTypeVarsTInto(e->type, bound, out);
  if (e->tag == ExprTag::TLam) {
    bound.push_back(e->name);
    freeTypeVarsEInto(e->e1, bound, out);
    bound.pop_back();
    return;
  }
  if (e->e1) freeTypeVarsEInto(e->e1, bound, out);
  if (e->e2) freeTypeVarsEInto(e->e2, bound, out);
}

}  // namespace

std::vector<std::string> freeExprVars(const ExprRef& e) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  freeExprVarsInto(e, bound, out);
  return {out.begin(), out.end()};
}

std::vector<std::string> freeTypeVarsT(const TypeRef& t) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  freeTypeVarsTInto(t, bound, out);
  return {out.begin(), out.end()};
}

std::vector<std::string> freeTypeVarsE(const ExprRef& e) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  freeTypeVarsEInto(e, bound, out);
  return {out.begin(), out.end()};
}

bool exprVarFreeIn(const std::string& x, const ExprRef& e) {
  auto fv = freeExprVars(e);
  return std::find(fv.begin(), fv.end(), x) != fv.end();
}
bool typeVarFreeInT(const std::string& x, const TypeRef& t) {
  auto fv = freeTypeVarsT(t);
  return std::find(fv.begin(), fv.end(), x) != fv.end();
}
bool typeVarFreeInE(const std::string& x, const ExprRef& e) {
  auto fv = freeTypeVarsE(e);
  return std::find(fv.begin(), fv.end(), x) != fv.end();
}

bool isClosed(const ExprRef& e) {
  return freeExprVars(e).empty() && freeTypeVarsE(e).empty();
}

}  // namespace fiplus
