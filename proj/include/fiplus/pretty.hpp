#pragma once

#include "fiplus/syntax.hpp"

// Pretty printing. Output re-parses to an alpha-equal tree.
//
// Type precedence:  forall / ->  <  &  <  atom
// Expr precedence:  ,,  <  :  <  application / @ / prefix forms  <  .l
// Lambda-like forms (\, /\, fix) extend as far right as possible and are
// parenthesized whenever they appear as an operand.

namespace fiplus {

std::string prettyType(const TypeRef& t);
std::string prettyExpr(const ExprRef& e);

}  // namespace fiplus
