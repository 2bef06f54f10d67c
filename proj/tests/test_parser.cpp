#include <doctest.h>

#include "fiplus/parser.hpp"
#include "fiplus/pretty.hpp"
#include "fiplus/subst.hpp"
#include "fiplus/testgen.hpp"

using namespace fiplus;

namespace {

TypeRef T(const std::string& s) {
  auto r = parseType(s);
  REQUIRE(std::holds_alternative<TypeRef>(r));
  return std::get<TypeRef>(r);
}

ExprRef E(const std::string& s) {
  auto r = parseExpr(s);
  REQUIRE(std::holds_alternative<ExprRef>(r));
  return std::get<ExprRef>(r);
}

ParseError Ebad(const std::string& s) {
  auto r = parseExpr(s);
  REQUIRE(std::holds_alternative<ParseError>(r));
  return std::get<ParseError>(r);
}

}  // namespace

TEST_CASE("type precedence: & binds tighter than ->") {
  TypeRef t = T("Int & Bool -> Int");
  REQUIRE(t->tag == TypeTag::Arrow);
  CHECK(eqType(t->lhs, tInter(tInt(), tBool())));
  CHECK(eqType(t->rhs, tInt()));
}

TEST_CASE("arrow is right associative, & left associative") {
  TypeRef t = T("Int -> Bool -> Int");
  REQUIRE(t->tag == TypeTag::Arrow);
  CHECK(t->rhs->tag == TypeTag::Arrow);
  TypeRef u = T("Int & Bool & String");
  REQUIRE(u->tag == TypeTag::Inter);
  CHECK(u->lhs->tag == TypeTag::Inter);
}

TEST_CASE("multi-field record types desugar to intersections") {
  TypeRef t = T("{x : Int; y : Bool}");
  CHECK(eqType(t, tInter(tRcd("x", tInt()), tRcd("y", tBool()))));
  TypeRef three = T("{a : Int; b : Bool; c : String}");
  REQUIRE(three->tag == TypeTag::Inter);
  CHECK(three->lhs->tag == TypeTag::Inter);  // left associated
}

TEST_CASE("forall types") {
  TypeRef t = T("forall X * Int. X & Int");
  REQUIRE(t->tag == TypeTag::Forall);
  CHECK(t->name == "X");
  CHECK(eqType(t->lhs, tInt()));
  CHECK(eqType(t->rhs, tInter(tVar("X"), tInt())));
  // Arrow-typed bounds and bodies parse without parentheses.
  TypeRef u = T("forall X * Int -> Int. X -> X");
  CHECK(eqType(u->lhs, tArrow(tInt(), tInt())));
}

TEST_CASE("merge expressions") {
  CHECK(eqExpr(E("1 ,, true"), eMerge(eInt(1), eBool(true))));
  ExprRef nested = E("1 ,, 2 ,, 3");
  REQUIRE(nested->tag == ExprTag::Merge);
  CHECK(nested->e1->tag == ExprTag::Merge);  // left associated
}

TEST_CASE("the trait-style fixpoint from the record example") {
  ExprRef e = E("fix self:A. {l1 = 1} ,, {l2 = self.l1}");
  ExprRef expected =
      eFix("self", tVar("A"),
           eMerge(eRcd("l1", eInt(1)),
                  eRcd("l2", eProj(eVar("self"), "l1"))));
  CHECK(eqExpr(e, expected));
}

TEST_CASE("annotated lambda application") {
  ExprRef e = E("(\\x:Int. x ,, false) : Int&Bool -> Int&Bool");
  REQUIRE(e->tag == ExprTag::Anno);
  REQUIRE(e->e1->tag == ExprTag::Lam);
  CHECK(eqType(e->type, tArrow(tInter(tInt(), tBool()),
                               tInter(tInt(), tBool()))));
  CHECK(eqExpr(e->e1->e1, eMerge(eVar("x"), eBool(false))));
}

TEST_CASE("lambda bodies extend maximally") {
  ExprRef e = E("\\x:Int. x ,, false");
  REQUIRE(e->tag == ExprTag::Lam);
  CHECK(e->e1->tag == ExprTag::Merge);
}

TEST_CASE("annotation binds tighter than merge, looser than application") {
  ExprRef e = E("x : Int ,, y");
  REQUIRE(e->tag == ExprTag::Merge);
  CHECK(e->e1->tag == ExprTag::Anno);
  ExprRef f = E("f x : Int");
  REQUIRE(f->tag == ExprTag::Anno);
  CHECK(f->e1->tag == ExprTag::App);
}

TEST_CASE("projection binds tightest; type application with @") {
  ExprRef e = E("f x.l");
  REQUIRE(e->tag == ExprTag::App);
  CHECK(e->e2->tag == ExprTag::Proj);
  ExprRef g = E("(f x).l");
  CHECK(g->tag == ExprTag::Proj);
  ExprRef h = E("f @Int x");
  REQUIRE(h->tag == ExprTag::App);
  CHECK(h->e1->tag == ExprTag::TApp);
  ExprRef i = E("f @(Int -> Int)");
  REQUIRE(i->tag == ExprTag::TApp);
  CHECK(i->type->tag == TypeTag::Arrow);
}

TEST_CASE("multi-field records desugar to merges") {
  ExprRef e = E("{l1 = 1; l2 = true}");
  CHECK(eqExpr(e, eMerge(eRcd("l1", eInt(1)), eRcd("l2", eBool(true)))));
}

TEST_CASE("top value, literals, comments") {
  CHECK(E("()")->tag == ExprTag::TopVal);
  CHECK(E("\"hi\"")->strVal == "hi");
  CHECK(E("42")->intVal == 42);
  CHECK(eqExpr(E("1 -- trailing comment\n,, true -- another"),
               eMerge(eInt(1), eBool(true))));
}

TEST_CASE("type abstraction with a bound requires an annotated body") {
  ExprRef e = E("/\\X * Int. ((\\x:X. x) : X -> X)");
  REQUIRE(e->tag == ExprTag::Anno);
  CHECK(eqType(e->type, tForall("X", tInt(), tArrow(tVar("X"), tVar("X")))));
  CHECK(e->e1->tag == ExprTag::TLam);
  auto bad = parseExpr("/\\X * Int. x");
  CHECK(std::holds_alternative<ParseError>(bad));
}

TEST_CASE("programs: let expands to a substituted annotation") {
  SourceFile f{"t.fip", "let f : Int -> Int = \\x:Int. x;\nf 1"};
  auto r = parseProgram(f);
  REQUIRE(std::holds_alternative<ExprRef>(r));
  ExprRef e = std::get<ExprRef>(r);
  REQUIRE(e->tag == ExprTag::App);
  REQUIRE(e->e1->tag == ExprTag::Anno);
  CHECK(e->e1->e1->tag == ExprTag::Lam);
  CHECK(eqExpr(e->e2, eInt(1)));
}

TEST_CASE("program with a single expression and an empty program") {
  auto r = parseProgram(SourceFile{"t.fip", "1 ,, true\n"});
  REQUIRE(std::holds_alternative<ExprRef>(r));
  CHECK(eqExpr(std::get<ExprRef>(r), eMerge(eInt(1), eBool(true))));

  auto bad = parseProgram(SourceFile{"t.fip", "-- nothing here\n"});
  REQUIRE(std::holds_alternative<ParseError>(bad));
  CHECK(std::get<ParseError>(bad).message().find("expression") !=
        std::string::npos);
}

TEST_CASE("nested lets substitute inside out") {
  SourceFile f{"t.fip",
               "let x : Int = 1;\nlet y : Int & Bool = x ,, true;\ny"};
  auto r = parseProgram(f);
  REQUIRE(std::holds_alternative<ExprRef>(r));
  ExprRef expected = eAnno(eMerge(eAnno(eInt(1), tInt()), eBool(true)),
                           tInter(tInt(), tBool()));
  CHECK(eqExpr(std::get<ExprRef>(r), expected));
}

TEST_CASE("parse errors carry positions and expectations") {
  ParseError e1 = Ebad("1 ,,");
  CHECK(e1.span.line == 1);
  CHECK(e1.message().find("expression") != std::string::npos);

  ParseError e2 = Ebad("(1 ,, true");
  CHECK(e2.message().find(")") != std::string::npos);

  auto e3 = parseType("Int ->");
  REQUIRE(std::holds_alternative<ParseError>(e3));

  ParseError e4 = Ebad("\\x. x");  // missing parameter annotation
  CHECK(e4.message().find(":") != std::string::npos);

  ParseError e5 = Ebad("1 # 2");
  CHECK(e5.span.col == 3);
}

TEST_CASE("desugared multi-field forms contain only single-field nodes") {
  ExprRef e = E("{a = 1; b = true; c = \"s\"}");
  // Every record node in the result is single-field by construction; the
  // tree is a left-nested merge of three records.
  REQUIRE(e->tag == ExprTag::Merge);
  REQUIRE(e->e1->tag == ExprTag::Merge);
  CHECK(e->e1->e1->tag == ExprTag::RcdE);
  CHECK(e->e1->e2->tag == ExprTag::RcdE);
  CHECK(e->e2->tag == ExprTag::RcdE);
}

TEST_CASE("parse of pretty output is alpha-equal: generated terms") {
  GenConfig cfg;
  cfg.seed = 20240817;
  cfg.termCount = 150;
  cfg.maxDepth = 4;
  for (const GenCase& c : genWellTyped(cfg)) {
    std::string text = prettyExpr(c.expr);
    CAPTURE(text);
    auto r = parseExpr(text);
    REQUIRE(std::holds_alternative<ExprRef>(r));
    CHECK(alphaEqExpr(std::get<ExprRef>(r), c.expr));
  }
}

TEST_CASE("parse of pretty output round-trips for types") {
  TypeUniverse u = enumTypes(2);
  size_t step = 37;  // sampled; the universe is large
  for (size_t i = 0; i < u.members.size(); i += step) {
    std::string text = prettyType(u.members[i]);
    auto r = parseType(text);
    REQUIRE(std::holds_alternative<TypeRef>(r));
    CHECK(eqType(std::get<TypeRef>(r), u.members[i]));
  }
}
