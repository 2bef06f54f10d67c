#include "fiplus/typing.hpp"

#include <cassert>

#include "fiplus/disjoint.hpp"
#include "fiplus/pretty.hpp"
#include "fiplus/subst.hpp"
#include "fiplus/subtyping.hpp"

namespace fiplus {

const char* typeErrorKindName(TypeErrorKind k) {
  switch (k) {
    case TypeErrorKind::NotWellFormed: return "NotWellFormed";
    case TypeErrorKind::NoInferredType: return "NoInferredType";
    case TypeErrorKind::SubtypeFailure: return "SubtypeFailure";
    case TypeErrorKind::NotApplicable: return "NotApplicable";
    case TypeErrorKind::DisjointnessFailure: return "DisjointnessFailure";
    case TypeErrorKind::ConsistencyFailure: return "ConsistencyFailure";
    case TypeErrorKind::UnboundVariable: return "UnboundVariable";
    case TypeErrorKind::CheckShapeMismatch: return "CheckShapeMismatch";
  }
  return "?";
}

bool wfType(const TypeCtx& ctx, const TypeRef& a) {
  switch (a->tag) {
    case TypeTag::Int:
    case TypeTag::Bool:
    case TypeTag::String:
    case TypeTag::Top:
    case TypeTag::Bot:
      return true;
    case TypeTag::Var:
      return ctx.contains(a->name);
    case TypeTag::Arrow:
    case TypeTag::Inter:
      return wfType(ctx, a->lhs) && wfType(ctx, a->rhs);
    case TypeTag::Rcd:
      return wfType(ctx, a->lhs);
    case TypeTag::Forall:
      return wfType(ctx, a->lhs) &&
             wfType(ctx.extended(a->name, a->lhs), a->rhs);
  }
  return false;
}

bool wfTypeCtx(const TypeCtx& ctx) {
  TypeCtx prefix;
  for (const auto& [name, bound] : ctx.binds) {
    if (prefix.contains(name)) return false;
    if (!wfType(prefix, bound)) return false;
    prefix.binds.emplace_back(name, bound);
  }
  return true;
}

bool wfTermCtx(const TypeCtx& ctx, const TermCtx& term) {
  for (size_t i = 0; i < term.binds.size(); ++i) {
    for (size_t j = i + 1; j < term.binds.size(); ++j)
      if (term.binds[i].first == term.binds[j].first) return false;
    if (!wfType(ctx, term.binds[i].second)) return false;
  }
  return true;
}

TypeRef principalType(const ExprRef& u) {
  switch (u->tag) {
    case ExprTag::LitInt: return tInt();
    case ExprTag::LitBool: return tBool();
    case ExprTag::LitStr: return tString();
    case ExprTag::TopVal: return tTop();
    case ExprTag::Anno: return u->type;
    case ExprTag::Merge:
      return tInter(principalType(u->e1), principalType(u->e2));
    default:
      assert(false && "principalType: not a pre-value");
      return tTop();
  }
}

bool consistent(const ExprRef& u1, const ExprRef& u2) {
  if (u1->tag == ExprTag::Merge)
    return consistent(u1->e1, u2) && consistent(u1->e2, u2);
  if (u2->tag == ExprTag::Merge)
    return consistent(u1, u2->e1) && consistent(u1, u2->e2);
  if (u1->tag == u2->tag) {
    switch (u1->tag) {
      case ExprTag::LitInt:
        if (u1->intVal == u2->intVal) return true;
        break;
      case ExprTag::LitBool:
        if (u1->boolVal == u2->boolVal) return true;
        break;
      case ExprTag::LitStr:
        if (u1->strVal == u2->strVal) return true;
        break;
      case ExprTag::TopVal:
        return true;
      case ExprTag::Anno:
        // Annotations may differ; bodies (including lambda parameter
        // annotations) must agree.
        if (alphaEqExpr(u1->e1, u2->e1)) return true;
        break;
      default:
        break;
    }
  }
  return disjoint(TypeCtx{}, principalType(u1), principalType(u2));
}

namespace {

TypeError err(TypeErrorKind kind, const ExprRef& at, std::string msg,
              std::string rule, TypeRef expected = nullptr,
              TypeRef actual = nullptr) {
  return TypeError{kind, at->span, std::move(msg), std::move(rule),
                   std::move(expected), std::move(actual)};
}

}  // namespace

InferResult infer(const TypeCtx& ctx, const TermCtx& term, const ExprRef& e) {
  switch (e->tag) {
    case ExprTag::Var: {
      if (TypeRef a = term.lookup(e->name)) return a;
      return err(TypeErrorKind::UnboundVariable, e,
                 "unbound variable '" + e->name + "'", "Typ-var");
    }
    case ExprTag::LitInt:
      return tInt();
    case ExprTag::LitBool:
      return tBool();
    case ExprTag::LitStr:
      return tString();
    case ExprTag::TopVal:
      return tTop();
    case ExprTag::Anno: {
      if (!wfType(ctx, e->type))
        return err(TypeErrorKind::NotWellFormed, e,
                   "annotation type " + prettyType(e->type) +
                       " is not well-formed",
                   "Typ-anno", nullptr, e->type);
      if (auto bad = check(ctx, term, e->e1, e->type)) return *bad;
      return e->type;
    }
    case ExprTag::Fix: {
      if (!wfType(ctx, e->type))
        return err(TypeErrorKind::NotWellFormed, e,
                   "fixpoint annotation " + prettyType(e->type) +
                       " is not well-formed",
                   "Typ-fix", nullptr, e->type);
      std::string self = e->name;
      ExprRef body = e->e1;
      if (term.contains(self)) {
        std::string fresh = freshName(self);
        body = substExpr(body, self, eVar(fresh));
        self = fresh;
      }
      if (auto bad = check(ctx, term.extended(self, e->type), body, e->type))
        return *bad;
      return e->type;
    }
    case ExprTag::Lam:
      return err(TypeErrorKind::NoInferredType, e,
                 "lambda abstractions have no inferred type; add an "
                 "annotation",
                 "Typ-abs");
    case ExprTag::TLam:
      return err(TypeErrorKind::NoInferredType, e,
                 "type abstractions have no inferred type; add an "
                 "annotation",
                 "Typ-tabs");
    case ExprTag::RcdE: {
      InferResult inner = infer(ctx, term, e->e1);
      if (!inferOk(inner)) {
        if (inferError(inner).kind == TypeErrorKind::NoInferredType)
          return err(TypeErrorKind::NoInferredType, e,
                     "record field has no inferred type; annotate the record",
                     "Typ-rcd");
        return inner;
      }
      return tRcd(e->name, inferType(inner));
    }
    case ExprTag::Merge: {
      InferResult l = infer(ctx, term, e->e1);
      if (!inferOk(l)) return l;
      InferResult r = infer(ctx, term, e->e2);
      if (!inferOk(r)) return r;
      const TypeRef& a = inferType(l);
      const TypeRef& b = inferType(r);
      if (disjoint(ctx, a, b)) return tInter(a, b);
      if (isPreValue(e->e1) && isPreValue(e->e2) && isClosed(e->e1) &&
          isClosed(e->e2) && consistent(e->e1, e->e2))
        return tInter(a, b);
      return err(TypeErrorKind::DisjointnessFailure, e,
                 "merge of non-disjoint types " + prettyType(a) + " and " +
                     prettyType(b),
                 "Typ-merge", a, b);
    }
    case ExprTag::App: {
      InferResult f = infer(ctx, term, e->e1);
      if (!inferOk(f)) return f;
      auto form = appDist(inferType(f));
      if (!form || form->kind != ApplicableKind::Arrow)
        return err(TypeErrorKind::NotApplicable, e,
                   "expression of type " + prettyType(inferType(f)) +
                       " cannot be applied",
                   "Typ-app", nullptr, inferType(f));
      if (auto bad = check(ctx, term, e->e2, form->lhs)) return *bad;
      return form->rhs;
    }
    case ExprTag::TApp: {
      if (!wfType(ctx, e->type))
        return err(TypeErrorKind::NotWellFormed, e,
                   "type argument " + prettyType(e->type) +
                       " is not well-formed",
                   "Typ-tapp", nullptr, e->type);
      InferResult f = infer(ctx, term, e->e1);
      if (!inferOk(f)) return f;
      auto form = appDist(inferType(f));
      if (!form || form->kind != ApplicableKind::Forall)
        return err(TypeErrorKind::NotApplicable, e,
                   "expression of type " + prettyType(inferType(f)) +
                       " cannot take a type argument",
                   "Typ-tapp", nullptr, inferType(f));
      if (!disjoint(ctx, e->type, form->lhs))
        return err(TypeErrorKind::DisjointnessFailure, e,
                   "type argument " + prettyType(e->type) +
                       " is not disjoint with the bound " +
                       prettyType(form->lhs),
                   "Typ-tapp", form->lhs, e->type);
      return substTypeInType(form->rhs, form->binderOrLabel, e->type);
    }
    case ExprTag::Proj: {
      InferResult t = infer(ctx, term, e->e1);
      if (!inferOk(t)) return t;
      auto field = projField(inferType(t), e->name);
      if (!field)
        return err(TypeErrorKind::NotApplicable, e,
                   "expression of type " + prettyType(inferType(t)) +
                       " has no field '" + e->name + "'",
                   "Typ-proj", nullptr, inferType(t));
      return *field;
    }
  }
  return err(TypeErrorKind::NoInferredType, e, "no inferred type", "");
}

std::optional<TypeError> check(const TypeCtx& ctx, const TermCtx& term,
                               const ExprRef& e, const TypeRef& b) {
  if (isPForm(e)) {
    if (e->tag == ExprTag::Lam && b->tag == TypeTag::Arrow) {
      if (!subtype(ctx, b->lhs, e->type))
        return err(TypeErrorKind::SubtypeFailure, e,
                   "argument type " + prettyType(b->lhs) +
                       " is not a subtype of the parameter type " +
                       prettyType(e->type),
                   "Typ-abs", e->type, b->lhs);
      std::string param = e->name;
      ExprRef body = e->e1;
      if (term.contains(param)) {
        std::string fresh = freshName(param);
        body = substExpr(body, param, eVar(fresh));
        param = fresh;
      }
      return check(ctx, term.extended(param, e->type), body, b->rhs);
    }
    if (e->tag == ExprTag::TLam && b->tag == TypeTag::Forall) {
      std::string z = freshTypeName(e->name);
      ExprRef body = substTypeInExpr(e->e1, e->name, tVar(z));
      TypeRef bodyType = substTypeInType(b->rhs, b->name, tVar(z));
      return check(ctx.extended(z, b->lhs), term, body, bodyType);
    }
    if (e->tag == ExprTag::RcdE && b->tag == TypeTag::Rcd &&
        e->name == b->name)
      return check(ctx, term, e->e1, b->lhs);
    if (auto s = split(b)) {
      if (auto bad = check(ctx, term, e, s->left)) return bad;
      return check(ctx, term, e, s->right);
    }
    return err(TypeErrorKind::CheckShapeMismatch, e,
               "checkable term does not match type " + prettyType(b),
               "Typ-inter", b);
  }
  InferResult r = infer(ctx, term, e);
  if (!inferOk(r)) return inferError(r);
  const TypeRef& a = inferType(r);
  if (!subtype(ctx, a, b))
    return err(TypeErrorKind::SubtypeFailure, e,
               "inferred type " + prettyType(a) + " is not a subtype of " +
                   prettyType(b),
               "Typ-sub", b, a);
  return std::nullopt;
}

}  // namespace fiplus
