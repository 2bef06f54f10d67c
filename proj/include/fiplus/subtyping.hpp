#pragma once

#include <optional>

#include "fiplus/syntax.hpp"

// Splittable/ordinary types, top-like and bottom-like predicates,
// algorithmic subtyping, type equivalence, isomorphic subtyping and
// applicative distribution.

namespace fiplus {

// A splittable type A decomposes into two halves with A ~ left & right.
struct SplitResult {
  TypeRef left;
  TypeRef right;
};

// Ordinary types have no intersection in positive position.
bool ordinary(const TypeRef& a);

// The unique split of a non-ordinary type:
//   A & B            -> (A, B)
//   A -> B (B splits) -> (A -> B1, A -> B2)
//   {l : A} (A splits) -> ({l : A1}, {l : A2})
//   forall X*A. B (B splits) -> (forall X*A. B1, forall X*A. B2)
std::optional<SplitResult> split(const TypeRef& a);

// Bot, or an intersection with a bottom-like component.
bool bottomLike(const TypeRef& a);

// Supertypes of Top. A type variable is top-like when its recorded
// disjointness bound is bottom-like.
bool topLike(const TypeCtx& ctx, const TypeRef& a);

// Algorithmic subtyping. Splits the supertype first, then dispatches on
// ordinary right-hand sides with the top-like rule ahead of structural ones.
bool subtype(const TypeCtx& ctx, const TypeRef& a, const TypeRef& b);

// Mutual subtyping.
bool typeEquiv(const TypeCtx& ctx, const TypeRef& a, const TypeRef& b);

// A is B, or an intersection mirroring B's split, component-wise.
bool isoSubtype(const TypeRef& a, const TypeRef& b);

enum class ApplicableKind { Arrow, Forall, Rcd };

// One of the three applicable shapes a type can distribute to.
struct ApplicableForm {
  ApplicableKind kind;
  // Arrow: lhs = domain, rhs = codomain.
  // Forall: binder/lhs = bound, rhs = body.
  // Rcd: label, lhs = field.
  std::string binderOrLabel;
  TypeRef lhs;
  TypeRef rhs;
};

// Applicative distribution: arrows/universals/records pass through;
// intersections merge when both components distribute to the same
// constructor (same label for records).
std::optional<ApplicableForm> appDist(const TypeRef& a);

// Label-directed record distribution used by projection: the field type at
// label l, intersecting matching components of an intersection and dropping
// the rest.
std::optional<TypeRef> projField(const TypeRef& a, const std::string& label);

}  // namespace fiplus
