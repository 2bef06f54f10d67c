#pragma once

#include "fiplus/syntax.hpp"

// Capture-avoiding substitution and alpha-equivalence. Binders are renamed
// on the fly (x -> x'1, x'2, ...) whenever substitution would capture.

namespace fiplus {

// Fresh name derived from hint, distinct from anything produced before in
// this process. Fresh names stay lexable by the parser.
std::string freshName(const std::string& hint);
std::string freshTypeName(const std::string& hint);

// A[X := B]
TypeRef substTypeInType(const TypeRef& a, const std::string& x,
                        const TypeRef& b);

// e[X := A] over all type positions of e.
ExprRef substTypeInExpr(const ExprRef& e, const std::string& x,
                        const TypeRef& a);

// e[x := e2]
ExprRef substExpr(const ExprRef& e, const std::string& x, const ExprRef& e2);

bool alphaEqType(const TypeRef& a, const TypeRef& b);
bool alphaEqExpr(const ExprRef& a, const ExprRef& b);

}  // namespace fiplus
