#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

// Abstract syntax for the calculus: types, expressions, contexts and the
// value / pre-value classification. All nodes are immutable after
// construction and freely shared via shared_ptr.

namespace fiplus {

struct Type;
struct Expr;
using TypeRef = std::shared_ptr<const Type>;
using ExprRef = std::shared_ptr<const Expr>;

// Source position, 1-based. line == 0 means "no position" (synthesized node).
struct Span {
  uint32_t line = 0;
  uint32_t col = 0;
};

enum class TypeTag {
  Int,
  Bool,
  String,
  Top,
  Bot,
  Var,     // name
  Arrow,   // lhs -> rhs
  Inter,   // lhs & rhs
  Forall,  // forall name * lhs . rhs
  Rcd,     // { name : lhs }
};

struct Type {
  TypeTag tag;
  std::string name;  // Var name, Forall binder, Rcd label
  TypeRef lhs;       // Arrow domain, Inter left, Forall bound, Rcd field
  TypeRef rhs;       // Arrow codomain, Inter right, Forall body
  Span span;
};

TypeRef tInt();
TypeRef tBool();
TypeRef tString();
TypeRef tTop();
TypeRef tBot();
TypeRef tVar(std::string name);
TypeRef tArrow(TypeRef dom, TypeRef cod);
TypeRef tInter(TypeRef l, TypeRef r);
TypeRef tForall(std::string binder, TypeRef bound, TypeRef body);
TypeRef tRcd(std::string label, TypeRef field);

enum class ExprTag {
  Var,      // name
  LitInt,   // intVal
  LitBool,  // boolVal
  LitStr,   // strVal
  TopVal,   // ()
  Lam,      // \name : type . e1
  TLam,     // /\name . e1
  RcdE,     // { name = e1 }
  Anno,     // e1 : type
  Merge,    // e1 ,, e2
  Fix,      // fix name : type . e1
  App,      // e1 e2
  TApp,     // e1 @type
  Proj,     // e1 . name
};

struct Expr {
  ExprTag tag;
  std::string name;  // Var, Lam param, TLam binder, RcdE/Proj label, Fix self
  long long intVal = 0;
  bool boolVal = false;
  std::string strVal;
  TypeRef type;  // Lam param type, Anno/Fix annotation, TApp argument
  ExprRef e1;
  ExprRef e2;
  Span span;
};

ExprRef eVar(std::string name);
ExprRef eInt(long long v);
ExprRef eBool(bool v);
ExprRef eStr(std::string v);
ExprRef eTop();
ExprRef eLam(std::string param, TypeRef paramType, ExprRef body);
ExprRef eTLam(std::string binder, ExprRef body);
ExprRef eRcd(std::string label, ExprRef body);
ExprRef eAnno(ExprRef body, TypeRef ty);
ExprRef eMerge(ExprRef l, ExprRef r);
ExprRef eFix(std::string self, TypeRef ty, ExprRef body);
ExprRef eApp(ExprRef fn, ExprRef arg);
ExprRef eTApp(ExprRef fn, TypeRef argType);
ExprRef eProj(ExprRef target, std::string label);

ExprRef withSpan(ExprRef e, Span s);
TypeRef withSpan(TypeRef t, Span s);

// Syntactic equality, spans ignored. Bound names are compared literally;
// use alphaEqType/alphaEqExpr (subst.hpp) for equality up to renaming.
bool eqType(const TypeRef& a, const TypeRef& b);
bool eqExpr(const ExprRef& a, const ExprRef& b);

// Ordered type-variable bindings X * A; earlier entries are in scope for
// later bounds.
struct TypeCtx {
  std::vector<std::pair<std::string, TypeRef>> binds;

  bool contains(const std::string& x) const;
  // Bound of the most recent binding of x, or null.
  TypeRef lookup(const std::string& x) const;
  TypeCtx extended(std::string x, TypeRef bound) const;
};

// Ordered term-variable bindings x : A.
struct TermCtx {
  std::vector<std::pair<std::string, TypeRef>> binds;

  bool contains(const std::string& x) const;
  TypeRef lookup(const std::string& x) const;
  TermCtx extended(std::string x, TypeRef ty) const;
};

// p-forms: lambda, type lambda, single-field record. These are checkable
// terms without an inferred type of their own.
bool isPForm(const ExprRef& e);

// v ::= p | p:A | i | () | v,,v
bool isValue(const ExprRef& e);

// u ::= i | () | e:A | u,,u
bool isPreValue(const ExprRef& e);

struct SyntaxClass {
  bool value = false;
  bool prevalue = false;
};

SyntaxClass classify(const ExprRef& e);

// Free variables (term variables of e; type variables of t / of type
// positions in e).
std::vector<std::string> freeExprVars(const ExprRef& e);
std::vector<std::string> freeTypeVarsT(const TypeRef& t);
std::vector<std::string> freeTypeVarsE(const ExprRef& e);

bool exprVarFreeIn(const std::string& x, const ExprRef& e);
bool typeVarFreeInT(const std::string& x, const TypeRef& t);
bool typeVarFreeInE(const std::string& x, const ExprRef& e);

// Closed: no free term or type variables.
bool isClosed(const ExprRef& e);

}  // namespace fiplus
