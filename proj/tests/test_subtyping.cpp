#include <doctest.h>

#include <functional>
#include <random>

#include "fiplus/parser.hpp"
#include "fiplus/pretty.hpp"
#include "fiplus/subtyping.hpp"
#include "fiplus/testgen.hpp"

using namespace fiplus;

namespace {
TypeRef T(const std::string& s) { return std::get<TypeRef>(parseType(s)); }
const TypeCtx kEmpty;

// Reassembles the type an applicable form denotes.
TypeRef formType(const ApplicableForm& f) {
  switch (f.kind) {
    case ApplicableKind::Arrow: return tArrow(f.lhs, f.rhs);
    case ApplicableKind::Forall: return tForall(f.binderOrLabel, f.lhs, f.rhs);
    case ApplicableKind::Rcd: return tRcd(f.binderOrLabel, f.lhs);
  }
  return nullptr;
}
}  // namespace

TEST_CASE("ordinary types") {
  CHECK(ordinary(T("Int")));
  CHECK_FALSE(ordinary(T("Int -> Int & Bool")));
  CHECK(ordinary(T("(Int & Bool) -> Int")));
  CHECK(ordinary(T("forall X * Int. X")));
  CHECK_FALSE(ordinary(T("forall X * Int. X & Int")));
  CHECK_FALSE(ordinary(T("{l : Int & Bool}")));
  CHECK(ordinary(T("{l : Int}")));
}

TEST_CASE("splitting") {
  auto s1 = split(T("Int -> Int & Bool"));
  REQUIRE(s1.has_value());
  CHECK(eqType(s1->left, T("Int -> Int")));
  CHECK(eqType(s1->right, T("Int -> Bool")));

  auto s2 = split(T("Int & Bool"));
  REQUIRE(s2.has_value());
  CHECK(eqType(s2->left, tInt()));
  CHECK(eqType(s2->right, tBool()));

  auto s3 = split(T("forall X * Int. X & Int"));
  REQUIRE(s3.has_value());
  CHECK(eqType(s3->left, T("forall X * Int. X")));
  CHECK(eqType(s3->right, T("forall X * Int. Int")));

  CHECK_FALSE(split(T("Int")).has_value());
  CHECK_FALSE(split(T("Top")).has_value());
}

TEST_CASE("bottom-like types") {
  CHECK(bottomLike(T("Bot")));
  CHECK(bottomLike(T("Bot & Int")));
  CHECK(bottomLike(T("Int & Bot")));
  CHECK_FALSE(bottomLike(T("Int")));
  CHECK_FALSE(bottomLike(T("Bot -> Int")));
}

TEST_CASE("top-like types") {
  CHECK(topLike(kEmpty, T("Int -> Top")));
  CHECK(topLike(kEmpty, T("Top")));
  CHECK(topLike(kEmpty, T("Top & (Int -> Top)")));
  CHECK(topLike(kEmpty, T("{l : Top}")));
  CHECK(topLike(kEmpty, T("forall X * Bot. X")));
  CHECK_FALSE(topLike(kEmpty, T("Int")));
  CHECK_FALSE(topLike(kEmpty, T("Top -> Int")));
  TypeCtx ctx = kEmpty.extended("X", tBot());
  CHECK(topLike(ctx, tVar("X")));
  TypeCtx ctx2 = kEmpty.extended("X", tInt());
  CHECK_FALSE(topLike(ctx2, tVar("X")));
}

TEST_CASE("subtyping highlights") {
  CHECK(subtype(kEmpty, T("(forall X * Int. X) & (forall X * Int. Int)"),
                T("forall X * Int. X & Int")));
  CHECK(subtype(kEmpty, T("Int & Bool"), T("Int")));
  CHECK(subtype(kEmpty, T("Top"), T("Top -> Top")));
  CHECK(subtype(kEmpty, T("Bot"), T("Int")));
  CHECK(subtype(kEmpty, T("Int"), T("Int & Int")));
  CHECK_FALSE(subtype(kEmpty, T("Int"), T("Bool")));
  CHECK_FALSE(subtype(kEmpty, T("Int"), T("Int & Bool")));
  // Contravariant domains and bounds.
  CHECK(subtype(kEmpty, T("Top -> Int"), T("Int -> Int")));
  CHECK(subtype(kEmpty, T("forall X * Top. Int"), T("forall X * Int. Int")));
  CHECK_FALSE(subtype(kEmpty, T("forall X * Int. Int"),
                      T("forall X * Top. Int")));
  // A variable is top-like when its bound is bottom-like.
  TypeCtx ctx = kEmpty.extended("X", tBot());
  CHECK(subtype(ctx, T("Int"), tVar("X")));
}

TEST_CASE("type equivalence") {
  CHECK(typeEquiv(kEmpty, T("Int -> Int & Bool"),
                  T("(Int -> Int) & (Int -> Bool)")));
  CHECK(typeEquiv(kEmpty, T("Top"), T("Int -> Top")));
  CHECK_FALSE(typeEquiv(kEmpty, T("Int"), T("Bool")));
}

TEST_CASE("isomorphic subtyping") {
  CHECK(isoSubtype(T("(Int -> Int) & (Int -> Bool)"), T("Int -> Int & Bool")));
  CHECK(isoSubtype(T("Int"), T("Int")));
  CHECK(isoSubtype(T("forall X * Int. X -> X"), T("forall Y * Int. Y -> Y")));
  CHECK_FALSE(isoSubtype(T("Top"), T("Top -> Top")));
  CHECK_FALSE(isoSubtype(T("Int -> Int & Bool"),
                         T("(Int -> Int) & (Int -> Bool)")));
}

TEST_CASE("applicative distribution") {
  auto f1 = appDist(T("(Int -> Int) & (Int -> Bool)"));
  REQUIRE(f1.has_value());
  CHECK(f1->kind == ApplicableKind::Arrow);
  CHECK(eqType(f1->lhs, T("Int & Int")));
  CHECK(eqType(f1->rhs, T("Int & Bool")));

  auto f2 = appDist(T("Int -> Bool"));
  REQUIRE(f2.has_value());
  CHECK(eqType(f2->lhs, tInt()));

  auto f3 = appDist(T("{l : Int} & {l : Bool}"));
  REQUIRE(f3.has_value());
  CHECK(f3->kind == ApplicableKind::Rcd);
  CHECK(f3->binderOrLabel == "l");
  CHECK(eqType(f3->lhs, T("Int & Bool")));

  CHECK_FALSE(appDist(T("Top")).has_value());
  CHECK_FALSE(appDist(T("Int")).has_value());
  CHECK_FALSE(appDist(T("{l : Int} & {m : Bool}")).has_value());
  CHECK_FALSE(appDist(T("(Int -> Int) & {l : Int}")).has_value());

  auto f4 = appDist(T("(forall X * Int. X -> X) & (forall Y * Bool. Y)"));
  REQUIRE(f4.has_value());
  CHECK(f4->kind == ApplicableKind::Forall);
  CHECK(eqType(f4->lhs, T("Int & Bool")));
}

TEST_CASE("label-directed record distribution") {
  auto p1 = projField(T("{l : Int} & {m : Bool}"), "l");
  REQUIRE(p1.has_value());
  CHECK(eqType(*p1, tInt()));
  auto p2 = projField(T("{l : Int} & {l : Bool}"), "l");
  REQUIRE(p2.has_value());
  CHECK(eqType(*p2, T("Int & Bool")));
  CHECK_FALSE(projField(T("{l : Int}"), "m").has_value());
  CHECK_FALSE(projField(T("Int"), "l").has_value());
}

TEST_CASE("reflexivity over the depth-2 universe") {
  TypeUniverse u = enumTypes(2);
  for (const auto& a : u.members) REQUIRE(subtype(kEmpty, a, a));
}

TEST_CASE("transitivity on sampled depth-2 triples") {
  TypeUniverse u = enumTypes(2);
  std::mt19937_64 rng(7);
  int checked = 0;
  for (int i = 0; i < 100000 && checked < 2000; ++i) {
    const TypeRef& a = u.members[rng() % u.members.size()];
    const TypeRef& b = u.members[rng() % u.members.size()];
    if (!subtype(kEmpty, a, b)) continue;
    const TypeRef& c = u.members[rng() % u.members.size()];
    if (!subtype(kEmpty, b, c)) continue;
    ++checked;
    REQUIRE(subtype(kEmpty, a, c));
  }
  CHECK(checked >= 500);
}

TEST_CASE("split soundness and supertype inversion on the universe") {
  TypeUniverse u = enumTypes(2);
  std::mt19937_64 rng(11);
  for (const auto& a : u.members) {
    auto s = split(a);
    if (!s) {
      REQUIRE(ordinary(a));
      continue;
    }
    REQUIRE_FALSE(ordinary(a));
    REQUIRE(typeEquiv(kEmpty, a, tInter(s->left, s->right)));
    // Inversion on sampled left-hand sides.
    for (int k = 0; k < 3; ++k) {
      const TypeRef& x = u.members[rng() % u.members.size()];
      bool whole = subtype(kEmpty, x, a);
      bool parts = subtype(kEmpty, x, s->left) && subtype(kEmpty, x, s->right);
      REQUIRE(whole == parts);
    }
  }
}

TEST_CASE("top-like and bottom-like agree with subtyping on the universe") {
  TypeUniverse u = enumTypes(2);
  for (const auto& a : u.members) {
    REQUIRE(topLike(kEmpty, a) == subtype(kEmpty, tTop(), a));
    if (bottomLike(a)) REQUIRE(subtype(kEmpty, a, tBot()));
  }
}

TEST_CASE("isomorphic subtypes are equivalent") {
  TypeUniverse u = enumTypes(2);
  for (const auto& a : u.members) {
    auto s = split(a);
    if (!s) continue;
    TypeRef iso = tInter(s->left, s->right);
    REQUIRE(isoSubtype(iso, a));
    REQUIRE(typeEquiv(kEmpty, iso, a));
  }
}

TEST_CASE("applicative distribution is a subset of subtyping") {
  TypeUniverse u = enumTypes(2);
  for (const auto& a : u.members) {
    auto f = appDist(a);
    if (!f) continue;
    REQUIRE(subtype(kEmpty, a, formType(*f)));
  }
}

TEST_CASE("subtyping terminates on deep random types") {
  // Random closed types of depth 6, including universals.
  std::mt19937_64 rng(23);
  std::function<TypeRef(int, std::vector<std::string>&)> gen =
      [&](int d, std::vector<std::string>& vars) -> TypeRef {
    if (d == 0 || rng() % 6 == 0) {
      switch (rng() % (vars.empty() ? 4 : 5)) {
        case 0: return tInt();
        case 1: return tBool();
        case 2: return tTop();
        case 3: return tBot();
        default: return tVar(vars[rng() % vars.size()]);
      }
    }
    switch (rng() % 4) {
      case 0: return tInter(gen(d - 1, vars), gen(d - 1, vars));
      case 1: return tArrow(gen(d - 1, vars), gen(d - 1, vars));
      case 2: return tRcd("l", gen(d - 1, vars));
      default: {
        std::string x = "V" + std::to_string(vars.size());
        TypeRef bound = gen(d - 1, vars);
        vars.push_back(x);
        TypeRef body = gen(d - 1, vars);
        vars.pop_back();
        return tForall(x, bound, body);
      }
    }
  };
  for (int i = 0; i < 4000; ++i) {
    std::vector<std::string> vars;
    TypeRef a = gen(6, vars);
    TypeRef b = gen(6, vars);
    subtype(kEmpty, a, b);  // must return; REQUIRE nothing beyond that
  }
  CHECK(true);
}
