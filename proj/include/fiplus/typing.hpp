#pragma once

#include <optional>
#include <string>
#include <variant>

#include "fiplus/syntax.hpp"

// Well-formedness, principal types of pre-values, pre-value consistency and
// the bidirectional type system.

namespace fiplus {

enum class TypeErrorKind {
  NotWellFormed,
  NoInferredType,
  SubtypeFailure,
  NotApplicable,
  DisjointnessFailure,
  ConsistencyFailure,
  UnboundVariable,
  CheckShapeMismatch,
};

struct TypeError {
  TypeErrorKind kind;
  Span span;
  std::string message;
  std::string rule;  // rule that failed, for trace tests
  TypeRef expected;  // present for SubtypeFailure/CheckShapeMismatch
  TypeRef actual;
};

const char* typeErrorKindName(TypeErrorKind k);

// All free type variables of a bound in ctx; Forall bodies under the
// extended context.
bool wfType(const TypeCtx& ctx, const TypeRef& a);

// No duplicate binders; every bound well-formed under the bindings before it.
bool wfTypeCtx(const TypeCtx& ctx);

// No duplicate names; every type well-formed under ctx.
bool wfTermCtx(const TypeCtx& ctx, const TermCtx& term);

// Syntactic type of a pre-value: literals map to their base type, () to Top,
// e:A to A, merges to intersections. Precondition: isPreValue(u).
TypeRef principalType(const ExprRef& u);

// Pre-value consistency under the empty context: merges decompose on both
// sides; leaves agree when they are equal literals / (), annotations of
// alpha-equal bodies, or have disjoint principal types.
bool consistent(const ExprRef& u1, const ExprRef& u2);

using InferResult = std::variant<TypeRef, TypeError>;

inline bool inferOk(const InferResult& r) {
  return std::holds_alternative<TypeRef>(r);
}
inline const TypeRef& inferType(const InferResult& r) {
  return std::get<TypeRef>(r);
}
inline const TypeError& inferError(const InferResult& r) {
  return std::get<TypeError>(r);
}

// Type synthesis. Eliminations distribute the head's type into an
// applicable form; merges need disjoint component types, falling back to
// consistency for closed pre-values; annotations and fixpoints check their
// body. Lambdas and type abstractions never synthesize; records synthesize
// exactly when their field does.
InferResult infer(const TypeCtx& ctx, const TermCtx& term, const ExprRef& e);

// Type checking. Intro forms match arrow/universal/record types directly;
// any checkable form distributes over a splittable type; everything else
// synthesizes and subsumes.
std::optional<TypeError> check(const TypeCtx& ctx, const TermCtx& term,
                               const ExprRef& e, const TypeRef& b);

}  // namespace fiplus
