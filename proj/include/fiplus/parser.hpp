#pragma once

#include <set>
#include <string>
#include <variant>

#include "fiplus/syntax.hpp"

// Lexer and recursive-descent parser for the surface syntax.
//
//   types:  Int  Bool  String  Top  Bot  X  A -> B  A & B
//           forall X * A. B   {l : A; ...}
//   exprs:  x  1  true  "s"  ()  \x:A. e  /\X. e  fix x:A. e
//           e1 e2  e @A  e.l  e : A  e1 ,, e2  {l = e; ...}
//
// '&' binds tighter than '->' (right-assoc); application is left-assoc;
// projection binds tightest; ':' sits between application and ',,'; lambda
// bodies extend as far right as possible. Multi-field record types and
// records desugar left-associated to intersections and merges of
// single-field ones. '--' comments to end of line.
//
// 'let x : A = e; rest' binds x to (e : A) in rest by substitution.
// '/\X * A. e' requires e to carry a top-level annotation B and stands for
// (/\X. e) : forall X * A. B.

namespace fiplus {

struct SourceFile {
  std::string path;
  std::string contents;
};

struct ParseError {
  Span span;
  std::set<std::string> expected;
  std::string found;

  std::string message() const;
  // "path:line:col: message"
  std::string render(const std::string& path) const;
};

std::variant<TypeRef, ParseError> parseType(const std::string& text);
std::variant<ExprRef, ParseError> parseExpr(const std::string& text);
std::variant<ExprRef, ParseError> parseProgram(const SourceFile& file);

}  // namespace fiplus
