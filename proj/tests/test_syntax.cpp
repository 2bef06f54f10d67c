#include <doctest.h>

#include <set>
#include <vector>

#include "fiplus/parser.hpp"
#include "fiplus/pretty.hpp"
#include "fiplus/subst.hpp"
#include "fiplus/syntax.hpp"

using namespace fiplus;

namespace {

TypeRef T(const std::string& s) { return std::get<TypeRef>(parseType(s)); }
ExprRef E(const std::string& s) { return std::get<ExprRef>(parseExpr(s)); }

// Independent free-variable walker used as the oracle for the renaming
// cases of substitution; kept separate from the library's walker on purpose.
void oracleFreeT(const TypeRef& t, std::set<std::string> bound,
                 std::set<std::string>& out) {
  switch (t->tag) {
    case TypeTag::Var:
      if (!bound.count(t->name)) out.insert(t->name);
      return;
    case TypeTag::Forall: {
      oracleFreeT(t->lhs, bound, out);
      bound.insert(t->name);
      oracleFreeT(t->rhs, bound, out);
      return;
    }
    default:
      if (t->lhs) oracleFreeT(t->lhs, bound, out);
      if (t->rhs) oracleFreeT(t->rhs, bound, out);
  }
}

std::set<std::string> oracleFreeT(const TypeRef& t) {
  std::set<std::string> out;
  oracleFreeT(t, {}, out);
  return out;
}

void oracleFreeE(const ExprRef& e, std::set<std::string> bound,
                 std::set<std::string>& out) {
  switch (e->tag) {
    case ExprTag::Var:
      if (!bound.count(e->name)) out.insert(e->name);
      return;
    case ExprTag::Lam:
    case ExprTag::Fix: {
      bound.insert(e->name);
      oracleFreeE(e->e1, bound, out);
      return;
    }
    default:
      if (e->e1) oracleFreeE(e->e1, bound, out);
      if (e->e2) oracleFreeE(e->e2, bound, out);
  }
}

std::set<std::string> oracleFreeE(const ExprRef& e) {
  std::set<std::string> out;
  oracleFreeE(e, {}, out);
  return out;
}

}  // namespace

TEST_CASE("type substitution: direct replacement") {
  TypeRef got = substTypeInType(T("X & Int"), "X", tBool());
  CHECK(eqType(got, T("Bool & Int")));
}

TEST_CASE("type substitution: shadowed binder is untouched") {
  TypeRef t = T("forall X * Top. X");
  CHECK(eqType(substTypeInType(t, "X", tInt()), t));
}

TEST_CASE("type substitution renames to avoid capture") {
  // (forall Y * X. Y -> X)[X := Y]
  TypeRef t = T("forall Y * X. Y -> X");
  TypeRef got = substTypeInType(t, "X", tVar("Y"));
  CHECK(alphaEqType(got, T("forall Z * Y. Z -> Y")));
  // Oracle: X gone, Y free, and the binder did not capture the free Y.
  auto fv = oracleFreeT(got);
  CHECK(fv == std::set<std::string>{"Y"});
  REQUIRE(got->tag == TypeTag::Forall);
  CHECK(got->name != "Y");
}

TEST_CASE("type-in-expr substitution") {
  CHECK(alphaEqExpr(substTypeInExpr(E("\\x:X. x"), "X", tInt()),
                    E("\\x:Int. x")));
  ExprRef shadowed = E("/\\X. (x : X)");
  CHECK(alphaEqExpr(substTypeInExpr(shadowed, "X", tInt()), shadowed));

  // (e : forall Y * X. Y -> X)[X := Y] must rename the annotation's binder
  // away from the free Y.
  ExprRef e = E("x : (forall Y * X. Y -> X)");
  ExprRef got = substTypeInExpr(e, "X", tVar("Y"));
  REQUIRE(got->tag == ExprTag::Anno);
  auto fv = oracleFreeT(got->type);
  CHECK(fv == std::set<std::string>{"Y"});
  CHECK(got->type->name != "Y");
  CHECK(alphaEqType(got->type, T("forall Z * Y. Z -> Y")));

  // When the binder cannot capture (no free occurrence in the body), the
  // bound is still substituted; bounds scope outside the binder.
  ExprRef e2 = E("x : (forall Y * X. Y)");
  ExprRef got2 = substTypeInExpr(e2, "X", tVar("Y"));
  CHECK(oracleFreeT(got2->type) == std::set<std::string>{"Y"});
  CHECK(alphaEqType(got2->type, T("forall Z * Y. Z")));
}

TEST_CASE("term substitution") {
  // (x ,, false)[x := (1,,true):Int]
  ExprRef got = substExpr(E("x ,, false"), "x", E("(1 ,, true) : Int"));
  CHECK(eqExpr(got, E("(1 ,, true) : Int ,, false")));

  ExprRef lam = E("\\x:Int. x");
  CHECK(eqExpr(substExpr(lam, "x", eInt(1)), lam));

  // (\y:Int. x)[x := y] renames the binder away from the free y.
  ExprRef got2 = substExpr(E("\\y:Int. x"), "x", eVar("y"));
  REQUIRE(got2->tag == ExprTag::Lam);
  CHECK(got2->name != "y");
  CHECK(oracleFreeE(got2) == std::set<std::string>{"y"});
  CHECK(alphaEqExpr(got2, E("\\z:Int. y")));
}

TEST_CASE("substitution is a no-op without free occurrences") {
  std::vector<ExprRef> exprs = {
      E("1 ,, true"), E("\\x:Int. x"), E("{l = 1}"),
      E("fix f:Int. 1"), E("(\\x:Int. x) : Int -> Int")};
  for (const auto& e : exprs) {
    CHECK(alphaEqExpr(substExpr(e, "q", eInt(9)), e));
    CHECK(alphaEqExpr(substTypeInExpr(e, "Q", tBool()), e));
  }
  CHECK(alphaEqType(substTypeInType(T("Int -> {l : Bool}"), "Q", tInt()),
                    T("Int -> {l : Bool}")));
}

TEST_CASE("substitution respects alpha-equivalence") {
  ExprRef body1 = E("\\y:Int. x ,, y");
  ExprRef body2 = E("\\w:Int. x ,, w");
  REQUIRE(alphaEqExpr(body1, body2));
  ExprRef arg1 = E("\\z:Bool. z");
  ExprRef arg2 = E("\\v:Bool. v");
  CHECK(alphaEqExpr(substExpr(body1, "x", arg1),
                    substExpr(body2, "x", arg2)));
}

TEST_CASE("alpha equivalence") {
  CHECK(alphaEqExpr(E("\\x:Int. x"), E("\\y:Int. y")));
  CHECK_FALSE(alphaEqExpr(E("\\x:Int. x"), E("\\x:Bool. x")));
  CHECK(alphaEqExpr(E("/\\X. (x : X)"), E("/\\Y. (x : Y)")));
  CHECK_FALSE(alphaEqExpr(E("\\x:Int. x"), E("\\x:Int. 1")));
  CHECK(alphaEqType(T("forall X * Int. X -> X"), T("forall Y * Int. Y -> Y")));
  CHECK_FALSE(alphaEqType(T("forall X * Int. X"), T("forall X * Bool. X")));
  // Free variables compare by name.
  CHECK_FALSE(alphaEqExpr(eVar("x"), eVar("y")));
  CHECK(alphaEqExpr(eVar("x"), eVar("x")));
}

TEST_CASE("classification of the paper's forms") {
  SyntaxClass c1 = classify(E("1 ,, true"));
  CHECK(c1.value);
  CHECK(c1.prevalue);

  SyntaxClass c2 = classify(E("\\x:Int. x"));
  CHECK(c2.value);
  CHECK_FALSE(c2.prevalue);

  SyntaxClass c3 = classify(E("(\\x:Int. x) : Int -> Int"));
  CHECK(c3.value);
  CHECK(c3.prevalue);

  // Record bodies need not be values under call-by-name.
  SyntaxClass c4 = classify(E("{l = (\\f:Int->Int. f) ((\\x:Int. x) : Int -> Int)}"));
  CHECK(c4.value);
  CHECK_FALSE(c4.prevalue);

  // An annotated non-checkable term is a pre-value but not a value.
  SyntaxClass c5 = classify(E("(1 ,, true) : Int"));
  CHECK_FALSE(c5.value);
  CHECK(c5.prevalue);
}

namespace {

// Grammar transcription used as the classification oracle.
bool grammarP(const ExprRef& e) {
  return e->tag == ExprTag::Lam || e->tag == ExprTag::TLam ||
         e->tag == ExprTag::RcdE;
}
bool grammarValue(const ExprRef& e) {
  if (grammarP(e)) return true;
  if (e->tag == ExprTag::Anno && grammarP(e->e1)) return true;
  if (e->tag == ExprTag::LitInt || e->tag == ExprTag::LitBool ||
      e->tag == ExprTag::LitStr || e->tag == ExprTag::TopVal)
    return true;
  if (e->tag == ExprTag::Merge)
    return grammarValue(e->e1) && grammarValue(e->e2);
  return false;
}
bool grammarPreValue(const ExprRef& e) {
  if (e->tag == ExprTag::LitInt || e->tag == ExprTag::LitBool ||
      e->tag == ExprTag::LitStr || e->tag == ExprTag::TopVal)
    return true;
  if (e->tag == ExprTag::Anno) return true;
  if (e->tag == ExprTag::Merge)
    return grammarPreValue(e->e1) && grammarPreValue(e->e2);
  return false;
}

}  // namespace

TEST_CASE("classify agrees with the grammars on an enumerated universe") {
  // All trees of depth <= 3 over a small kernel, with binary nodes capped to
  // keep the universe tractable.
  std::vector<ExprRef> level = {eInt(1), eTop(), eApp(eVar("f"), eInt(1))};
  std::vector<ExprRef> all = level;
  for (int depth = 1; depth <= 3; ++depth) {
    std::vector<ExprRef> next;
    for (const auto& e : level) {
      next.push_back(eLam("x", tInt(), e));
      next.push_back(eTLam("X", e));
      next.push_back(eRcd("l", e));
      next.push_back(eAnno(e, tInt()));
      next.push_back(eFix("x", tInt(), e));
      next.push_back(eProj(e, "l"));
    }
    size_t pairBudget = depth < 3 ? level.size() : 12;
    for (size_t i = 0; i < level.size() && i < pairBudget; ++i)
      for (size_t j = 0; j < level.size() && j < pairBudget; ++j) {
        next.push_back(eMerge(level[i], level[j]));
        next.push_back(eApp(level[i], level[j]));
      }
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }
  CAPTURE(all.size());
  for (const auto& e : all) {
    SyntaxClass c = classify(e);
    REQUIRE(c.value == grammarValue(e));
    REQUIRE(c.prevalue == grammarPreValue(e));
  }
}

TEST_CASE("pretty printing of spec examples") {
  CHECK(prettyType(tInter(tInt(), tBool())) == "Int & Bool");
  CHECK(prettyType(tForall("X", tInt(), tInter(tVar("X"), tInt()))) ==
        "forall X * Int. X & Int");
  CHECK(prettyExpr(eMerge(eInt(1), eBool(true))) == "1 ,, true");
  CHECK(prettyType(T("Int & Bool -> Int")) == "Int & Bool -> Int");
  CHECK(prettyType(T("(Int -> Bool) -> Int")) == "(Int -> Bool) -> Int");
  CHECK(prettyExpr(E("(x ,, y).l")) == "(x ,, y).l");
  CHECK(prettyExpr(eTop()) == "()");
}

TEST_CASE("contexts") {
  TypeCtx delta;
  delta = delta.extended("X", tInt());
  delta = delta.extended("Y", tVar("X"));
  CHECK(delta.contains("X"));
  CHECK(eqType(delta.lookup("Y"), tVar("X")));
  CHECK_FALSE(delta.contains("Z"));

  TermCtx gamma;
  gamma = gamma.extended("x", tInt());
  gamma = gamma.extended("x", tBool());  // later binding shadows
  CHECK(eqType(gamma.lookup("x"), tBool()));
}

TEST_CASE("free variables and closedness") {
  CHECK(isClosed(E("\\x:Int. x")));
  CHECK_FALSE(isClosed(E("\\x:Int. y")));
  CHECK_FALSE(isClosed(E("\\x:X. x")));
  CHECK(isClosed(E("/\\X. ((\\x:X. x) : X -> X)")));
  auto fv = freeExprVars(E("x ,, (\\y:Int. z)"));
  CHECK(fv == std::vector<std::string>{"x", "z"});
}
