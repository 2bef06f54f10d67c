#pragma once

#include "fiplus/syntax.hpp"

// Algorithmic disjointness: two types are disjoint when every common
// supertype is top-like.

namespace fiplus {

// Axiomatic disjointness between distinct head constructors: distinct base
// types, base vs arrow/record/universal, arrow vs record/universal, record
// vs universal, records with distinct labels. Symmetric.
bool disjointAxiom(const TypeRef& a, const TypeRef& b);

// Full judgment. Top-like types are disjoint with everything; splittable
// types require both halves disjoint; a variable is disjoint with any
// supertype of its bound; same-label records compare fields, arrows compare
// codomains, universals compare bodies under the intersection of bounds;
// everything else falls to the axioms.
bool disjoint(const TypeCtx& ctx, const TypeRef& a, const TypeRef& b);

}  // namespace fiplus
