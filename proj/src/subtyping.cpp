#include "fiplus/subtyping.hpp"

#include "fiplus/subst.hpp"

namespace fiplus {

bool ordinary(const TypeRef& a) {
  switch (a->tag) {
    case TypeTag::Inter:
      return false;
    case TypeTag::Arrow:
    case TypeTag::Forall:
      return ordinary(a->rhs);
    case TypeTag::Rcd:
      return ordinary(a->lhs);
    default:
      return true;
  }
}

std::optional<SplitResult> split(const TypeRef& a) {
  switch (a->tag) {
    case TypeTag::Inter:
      return SplitResult{a->lhs, a->rhs};
    case TypeTag::Arrow: {
      auto s = split(a->rhs);
      if (!s) return std::nullopt;
      return SplitResult{tArrow(a->lhs, s->left), tArrow(a->lhs, s->right)};
    }
    case TypeTag::Rcd: {
      auto s = split(a->lhs);
      if (!s) return std::nullopt;
      return SplitResult{tRcd(a->name, s->left), tRcd(a->name, s->right)};
    }
    case TypeTag::Forall: {
      auto s = split(a->rhs);
      if (!s) return std::nullopt;
      return SplitResult{tForall(a->name, a->lhs, s->left),
                         tForall(a->name, a->lhs, s->right)};
    }
    default:
      return std::nullopt;
  }
}

bool bottomLike(const TypeRef& a) {
  switch (a->tag) {
    case TypeTag::Bot:
      return true;
    case TypeTag::Inter:
      return bottomLike(a->lhs) || bottomLike(a->rhs);
    default:
      return false;
  }
}

bool topLike(const TypeCtx& ctx, const TypeRef& a) {
  switch (a->tag) {
    case TypeTag::Top:
      return true;
    case TypeTag::Inter:
      return topLike(ctx, a->lhs) && topLike(ctx, a->rhs);
    case TypeTag::Arrow:
      return topLike(ctx, a->rhs);
    case TypeTag::Rcd:
      return topLike(ctx, a->lhs);
    case TypeTag::Forall:
      return topLike(ctx.extended(a->name, a->lhs), a->rhs);
    case TypeTag::Var: {
      TypeRef bound = ctx.lookup(a->name);
      return bound && bottomLike(bound);
    }
    default:
      return false;
  }
}

namespace {

bool subOrdinary(const TypeCtx& ctx, const TypeRef& a, const TypeRef& b);

bool sub(const TypeCtx& ctx, const TypeRef& a, const TypeRef& b) {
  if (auto s = split(b))
    return sub(ctx, a, s->left) && sub(ctx, a, s->right);
  return subOrdinary(ctx, a, b);
}

// b is ordinary here.
bool subOrdinary(const TypeCtx& ctx, const TypeRef& a, const TypeRef& b) {
  if (topLike(ctx, b)) return true;
  if (a->tag == TypeTag::Bot) return true;
  switch (a->tag) {
    case TypeTag::Int:
    case TypeTag::Bool:
    case TypeTag::String:
    case TypeTag::Top:
      return a->tag == b->tag;
    case TypeTag::Var:
      return b->tag == TypeTag::Var && a->name == b->name;
    case TypeTag::Arrow:
      return b->tag == TypeTag::Arrow && sub(ctx, b->lhs, a->lhs) &&
             sub(ctx, a->rhs, b->rhs);
    case TypeTag::Rcd:
      return b->tag == TypeTag::Rcd && a->name == b->name &&
             sub(ctx, a->lhs, b->lhs);
    case TypeTag::Forall: {
      if (b->tag != TypeTag::Forall) return false;
      // Contravariant bounds; bodies compared under a common fresh variable
      // bound by the supertype's constraint.
      if (!sub(ctx, b->lhs, a->lhs)) return false;
      std::string z = freshTypeName(a->name);
      TypeRef bodyA = substTypeInType(a->rhs, a->name, tVar(z));
      TypeRef bodyB = substTypeInType(b->rhs, b->name, tVar(z));
      return sub(ctx.extended(z, b->lhs), bodyA, bodyB);
    }
    case TypeTag::Inter:
      return sub(ctx, a->lhs, b) || sub(ctx, a->rhs, b);
    default:
      return false;
  }
}

}  // namespace

bool subtype(const TypeCtx& ctx, const TypeRef& a, const TypeRef& b) {
  return sub(ctx, a, b);
}

bool typeEquiv(const TypeCtx& ctx, const TypeRef& a, const TypeRef& b) {
  return sub(ctx, a, b) && sub(ctx, b, a);
}

bool isoSubtype(const TypeRef& a, const TypeRef& b) {
  if (alphaEqType(a, b)) return true;
  auto s = split(b);
  if (!s || a->tag != TypeTag::Inter) return false;
  return isoSubtype(a->lhs, s->left) && isoSubtype(a->rhs, s->right);
}

std::optional<ApplicableForm> appDist(const TypeRef& a) {
  switch (a->tag) {
    case TypeTag::Arrow:
      return ApplicableForm{ApplicableKind::Arrow, "", a->lhs, a->rhs};
    case TypeTag::Forall:
      return ApplicableForm{ApplicableKind::Forall, a->name, a->lhs, a->rhs};
    case TypeTag::Rcd:
      return ApplicableForm{ApplicableKind::Rcd, a->name, a->lhs, nullptr};
    case TypeTag::Inter: {
      auto l = appDist(a->lhs);
      auto r = appDist(a->rhs);
      if (!l || !r || l->kind != r->kind) return std::nullopt;
      switch (l->kind) {
        case ApplicableKind::Arrow:
          return ApplicableForm{ApplicableKind::Arrow, "",
                                tInter(l->lhs, r->lhs),
                                tInter(l->rhs, r->rhs)};
        case ApplicableKind::Rcd:
          if (l->binderOrLabel != r->binderOrLabel) return std::nullopt;
          return ApplicableForm{ApplicableKind::Rcd, l->binderOrLabel,
                                tInter(l->lhs, r->lhs), nullptr};
        case ApplicableKind::Forall: {
          // Rename both bodies to one fresh binder before intersecting.
          std::string z = freshTypeName(l->binderOrLabel);
          TypeRef bodyL = substTypeInType(l->rhs, l->binderOrLabel, tVar(z));
          TypeRef bodyR = substTypeInType(r->rhs, r->binderOrLabel, tVar(z));
          return ApplicableForm{ApplicableKind::Forall, z,
                                tInter(l->lhs, r->lhs),
                                tInter(bodyL, bodyR)};
        }
      }
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

std::optional<TypeRef> projField(const TypeRef& a, const std::string& label) {
  switch (a->tag) {
    case TypeTag::Rcd:
      if (a->name == label) return a->lhs;
      return std::nullopt;
    case TypeTag::Inter: {
      auto l = projField(a->lhs, label);
      auto r = projField(a->rhs, label);
      if (l && r) return tInter(*l, *r);
      if (l) return l;
      if (r) return r;
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

}  // namespace fiplus
