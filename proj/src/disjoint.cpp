#include "fiplus/disjoint.hpp"

#include "fiplus/subst.hpp"
#include "fiplus/subtyping.hpp"

namespace fiplus {

namespace {

bool isBase(const TypeRef& t) {
  return t->tag == TypeTag::Int || t->tag == TypeTag::Bool ||
         t->tag == TypeTag::String;
}

bool isStructural(const TypeRef& t) {
  return t->tag == TypeTag::Arrow || t->tag == TypeTag::Rcd ||
         t->tag == TypeTag::Forall;
}

}  // namespace

bool disjointAxiom(const TypeRef& a, const TypeRef& b) {
  if (isBase(a) && isBase(b)) return a->tag != b->tag;
  if (isBase(a) && isStructural(b)) return true;
  if (isStructural(a) && isBase(b)) return true;
  if (isStructural(a) && isStructural(b)) {
    if (a->tag != b->tag) return true;
    if (a->tag == TypeTag::Rcd) return a->name != b->name;
  }
  return false;
}

bool disjoint(const TypeCtx& ctx, const TypeRef& a, const TypeRef& b) {
  if (topLike(ctx, a) || topLike(ctx, b)) return true;
  if (auto s = split(a))
    return disjoint(ctx, s->left, b) && disjoint(ctx, s->right, b);
  if (auto s = split(b))
    return disjoint(ctx, a, s->left) && disjoint(ctx, a, s->right);
  if (a->tag == TypeTag::Var) {
    TypeRef bound = ctx.lookup(a->name);
    if (bound && subtype(ctx, bound, b)) return true;
  }
  if (b->tag == TypeTag::Var) {
    TypeRef bound = ctx.lookup(b->name);
    if (bound && subtype(ctx, bound, a)) return true;
  }
  if (a->tag == TypeTag::Var || b->tag == TypeTag::Var) return false;
  if (a->tag == TypeTag::Rcd && b->tag == TypeTag::Rcd &&
      a->name == b->name)
    return disjoint(ctx, a->lhs, b->lhs);
  if (a->tag == TypeTag::Arrow && b->tag == TypeTag::Arrow)
    return disjoint(ctx, a->rhs, b->rhs);
  if (a->tag == TypeTag::Forall && b->tag == TypeTag::Forall) {
    std::string z = freshTypeName(a->name);
    TypeRef bodyA = substTypeInType(a->rhs, a->name, tVar(z));
    TypeRef bodyB = substTypeInType(b->rhs, b->name, tVar(z));
    return disjoint(ctx.extended(z, tInter(a->lhs, b->lhs)), bodyA, bodyB);
  }
  return disjointAxiom(a, b);
}

}  // namespace fiplus
