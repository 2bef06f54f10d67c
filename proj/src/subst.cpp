#include "fiplus/subst.hpp"

#include <atomic>

namespace fiplus {

namespace {
std::atomic<uint64_t> freshCounter{0};

std::string baseOf(const std::string& hint) {
  // Strip an existing '<base>'<digits> suffix so renamed names do not pile up
  // tick markers.
  auto pos = hint.find('\'');
  if (pos == std::string::npos || pos == 0) return hint.empty() ? "x" : hint;
  return hint.substr(0, pos);
}
}  // namespace

std::string freshName(const std::string& hint) {
  return baseOf(hint) + "'" + std::to_string(++freshCounter);
}

std::string freshTypeName(const std::string& hint) {
  return baseOf(hint.empty() ? "X" : hint) + "'" + std::to_string(++freshCounter);
}

TypeRef substTypeInType(const TypeRef& a, const std::string& x,
                        const TypeRef& b) {
  switch (a->tag) {
    case TypeTag::Int:
    case TypeTag::Bool:
    case TypeTag::String:
    case TypeTag::Top:
    case TypeTag::Bot:
      return a;
    case TypeTag::Var:
      return a->name == x ? b : a;
    case TypeTag::Arrow:
      return tArrow(substTypeInType(a->lhs, x, b),
                    substTypeInType(a->rhs, x, b));
    case TypeTag::Inter:
      return tInter(substTypeInType(a->lhs, x, b),
                    substTypeInType(a->rhs, x, b));
    case TypeTag::Rcd:
      return tRcd(a->name, substTypeInType(a->lhs, x, b));
    case TypeTag::Forall: {
      TypeRef bound = substTypeInType(a->lhs, x, b);
      if (a->name == x) return tForall(a->name, bound, a->rhs);
      if (typeVarFreeInT(a->name, b) && typeVarFreeInT(x, a->rhs)) {
        std::string fresh = freshTypeName(a->name);
        TypeRef body = substTypeInType(a->rhs, a->name, tVar(fresh));
        return tForall(fresh, bound, substTypeInType(body, x, b));
      }
      return tForall(a->name, bound, substTypeInType(a->rhs, x, b));
    }
  }
  return a;
}

ExprRef substTypeInExpr(const ExprRef& e, const std::string& x,
                        const TypeRef& a) {
  auto st = [&](const TypeRef& t) { return substTypeInType(t, x, a); };
  switch (e->tag) {
    case ExprTag::Var:
    case ExprTag::LitInt:
    case ExprTag::LitBool:
    case ExprTag::LitStr:
    case ExprTag::TopVal:
      return e;
    case ExprTag::Lam:
      return eLam(e->name, st(e->type), substTypeInExpr(e->e1, x, a));
    case ExprTag::TLam: {
      if (e->name == x) return e;
      if (typeVarFreeInT(e->name, a) && typeVarFreeInE(x, e->e1)) {
        std::string fresh = freshTypeName(e->name);
        ExprRef body = substTypeInExpr(e->e1, e->name, tVar(fresh));
        return eTLam(fresh, substTypeInExpr(body, x, a));
      }
      return eTLam(e->name, substTypeInExpr(e->e1, x, a));
    }
    case ExprTag::RcdE:
      return eRcd(e->name, substTypeInExpr(e->e1, x, a));
    case ExprTag::Anno:
      return eAnno(substTypeInExpr(e->e1, x, a), st(e->type));
    case ExprTag::Merge:
      return eMerge(substTypeInExpr(e->e1, x, a),
                    substTypeInExpr(e->e2, x, a));
    case ExprTag::Fix:
      return eFix(e->name, st(e->type), substTypeInExpr(e->e1, x, a));
    case ExprTag::App:
      return eApp(substTypeInExpr(e->e1, x, a), substTypeInExpr(e->e2, x, a));
    case ExprTag::TApp:
      return eTApp(substTypeInExpr(e->e1, x, a), st(e->type));
    case ExprTag::Proj:
      return eProj(substTypeInExpr(e->e1, x, a), e->name);
  }
  return e;
}

ExprRef substExpr(const ExprRef& e, const std::string& x, const ExprRef& e2) {
  switch (e->tag) {
    case ExprTag::Var:
      return e->name == x ? e2 : e;
    case ExprTag::LitInt:
    case ExprTag::LitBool:
    case ExprTag::LitStr:
    case ExprTag::TopVal:
      return e;
    case ExprTag::Lam:
    case ExprTag::Fix: {
      if (e->name == x) return e;
      std::string binder = e->name;
      ExprRef body = e->e1;
      if (exprVarFreeIn(binder, e2) && exprVarFreeIn(x, body)) {
        std::string fresh = freshName(binder);
        body = substExpr(body, binder, eVar(fresh));
        binder = fresh;
      }
      body = substExpr(body, x, e2);
      return e->tag == ExprTag::Lam ? eLam(binder, e->type, body)
                                    : eFix(binder, e->type, body);
    }
    case ExprTag::TLam: {
      if (typeVarFreeInE(e->name, e2) && exprVarFreeIn(x, e->e1)) {
        std::string fresh = freshTypeName(e->name);
        ExprRef body = substTypeInExpr(e->e1, e->name, tVar(fresh));
        return eTLam(fresh, substExpr(body, x, e2));
      }
      return eTLam(e->name, substExpr(e->e1, x, e2));
    }
    case ExprTag::RcdE:
      return eRcd(e->name, substExpr(e->e1, x, e2));
    case ExprTag::Anno:
      return eAnno(substExpr(e->e1, x, e2), e->type);
    case ExprTag::Merge:
      return eMerge(substExpr(e->e1, x, e2), substExpr(e->e2, x, e2));
    case ExprTag::App:
      return eApp(substExpr(e->e1, x, e2), substExpr(e->e2, x, e2));
    case ExprTag::TApp:
      return eTApp(substExpr(e->e1, x, e2), e->type);
    case ExprTag::Proj:
      return eProj(substExpr(e->e1, x, e2), e->name);
  }
  return e;
}

namespace {

// Scope maps bound names to de-Bruijn-style levels for comparison.
struct ScopeMap {
  std::vector<std::pair<std::string, int>> entries;
  int next = 0;

  void push(const std::string& n) { entries.emplace_back(n, next++); }
  void pop() {
    entries.pop_back();
    --next;
  }
  // Level of n, or -1 when free.
  int levelOf(const std::string& n) const {
    for (auto it = entries.rbegin(); it != entries.rend(); ++it)
      if (it->first == n) return it->second;
    return -1;
  }
};

bool alphaEqTypeIn(const TypeRef& a, const TypeRef& b, ScopeMap& sa,
                   ScopeMap& sb) {
  if (a->tag != b->tag) return false;
  switch (a->tag) {
    case TypeTag::Int:
    case TypeTag::Bool:
    case TypeTag::String:
    case TypeTag::Top:
    case TypeTag::Bot:
      return true;
    case TypeTag::Var: {
      int la = sa.levelOf(a->name);
      int lb = sb.levelOf(b->name);
      if (la != lb) return false;
      return la >= 0 || a->name == b->name;
    }
    case TypeTag::Arrow:
    case TypeTag::Inter:
      return alphaEqTypeIn(a->lhs, b->lhs, sa, sb) &&
             alphaEqTypeIn(a->rhs, b->rhs, sa, sb);
    case TypeTag::Rcd:
      return a->name == b->name && alphaEqTypeIn(a->lhs, b->lhs, sa, sb);
    case TypeTag::Forall: {
      if (!alphaEqTypeIn(a->lhs, b->lhs, sa, sb)) return false;
      sa.push(a->name);
      sb.push(b->name);
      bool ok = alphaEqTypeIn(a->rhs, b->rhs, sa, sb);
      sa.pop();
      sb.pop();
      return ok;
    }
  }
  return false;
}

bool alphaEqExprIn(const ExprRef& a, const ExprRef& b, ScopeMap& ta,
                   ScopeMap& tb, ScopeMap& ea, ScopeMap& eb) {
  if (a->tag != b->tag) return false;
  switch (a->tag) {
    case ExprTag::Var: {
      int la = ea.levelOf(a->name);
      int lb = eb.levelOf(b->name);
      if (la != lb) return false;
      return la >= 0 || a->name == b->name;
    }
    case ExprTag::LitInt:
      return a->intVal == b->intVal;
    case ExprTag::LitBool:
      return a->boolVal == b->boolVal;
    case ExprTag::LitStr:
      return a->strVal == b->strVal;
    case ExprTag::TopVal:
      return true;
    case ExprTag::Lam:
    case ExprTag::Fix: {
      if (!alphaEqTypeIn(a->type, b->type, ta, tb)) return false;
      ea.push(a->name);
      eb.push(b->name);
      bool ok = alphaEqExprIn(a->e1, b->e1, ta, tb, ea, eb);
      ea.pop();
      eb.pop();
      return ok;
    }
    case ExprTag::TLam: {
      ta.push(a->name);
      tb.push(b->name);
      bool ok = alphaEqExprIn(a->e1, b->e1, ta, tb, ea, eb);
      ta.pop();
      tb.pop();
      return ok;
    }
    case ExprTag::RcdE:
    case ExprTag::Proj:
      return a->name == b->name &&
             alphaEqExprIn(a->e1, b->e1, ta, tb, ea, eb);
    case ExprTag::Anno:
    case ExprTag::TApp:
      return alphaEqTypeIn(a->type, b->type, ta, tb) &&
             alphaEqExprIn(a->e1, b->e1, ta, tb, ea, eb);
    case ExprTag::Merge:
    case ExprTag::App:
      return alphaEqExprIn(a->e1, b->e1, ta, tb, ea, eb) &&
             alphaEqExprIn(a->e2, b->e2, ta, tb, ea, eb);
  }
  return false;
}

}  // namespace

bool alphaEqType(const TypeRef& a, const TypeRef& b) {
  ScopeMap sa, sb;
  return alphaEqTypeIn(a, b, sa, sb);
}

bool alphaEqExpr(const ExprRef& a, const ExprRef& b) {
  ScopeMap ta, tb, ea, eb;
  return alphaEqExprIn(a, b, ta, tb, ea, eb);
}

}  // namespace fiplus
