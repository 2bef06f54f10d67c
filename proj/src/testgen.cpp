#include "fiplus/testgen.hpp"

#include <functional>
#include <optional>
#include <random>
#include <stdexcept>

#include "fiplus/disjoint.hpp"
#include "fiplus/eval.hpp"
#include "fiplus/pretty.hpp"
#include "fiplus/subst.hpp"
#include "fiplus/subtyping.hpp"
#include "fiplus/typing.hpp"

namespace fiplus {

TypeUniverse enumTypes(int depth, bool includeForalls) {
  TypeUniverse u;
  u.depth = depth;
  u.bases = {"Int", "Bool", "Top", "Bot"};
  u.includeForalls = includeForalls;

  std::vector<TypeRef> current = {tInt(), tBool(), tTop(), tBot()};
  u.members = current;
  for (int d = 1; d <= depth; ++d) {
    std::vector<TypeRef> next;
    const auto& prev = u.members;
    for (const auto& a : prev)
      for (const auto& b : prev) next.push_back(tInter(a, b));
    for (const auto& a : prev)
      for (const auto& b : prev) next.push_back(tArrow(a, b));
    for (const auto& a : prev) next.push_back(tRcd("l", a));
    if (includeForalls && d == 1) {
      for (const auto& bound : current)
        for (const auto& body : current)
          next.push_back(tForall("X", bound, body));
      for (const auto& bound : current)
        next.push_back(tForall("X", bound, tVar("X")));
    }
    u.members.insert(u.members.end(), next.begin(), next.end());
  }
  return u;
}

bool oracleDisjointSpec(const TypeRef& a, const TypeRef& b,
                        const TypeUniverse& universe) {
  TypeCtx empty;
  for (const auto& c : universe.members) {
    if (subtype(empty, a, c) && subtype(empty, b, c) && !topLike(empty, c))
      return false;
  }
  return true;
}

ExprRef alphaRenameBinders(const ExprRef& e) {
  switch (e->tag) {
    case ExprTag::Var:
    case ExprTag::LitInt:
    case ExprTag::LitBool:
    case ExprTag::LitStr:
    case ExprTag::TopVal:
      return e;
    case ExprTag::Lam: {
      std::string fresh = freshName(e->name);
      return eLam(fresh, e->type,
                  alphaRenameBinders(substExpr(e->e1, e->name, eVar(fresh))));
    }
    case ExprTag::Fix: {
      std::string fresh = freshName(e->name);
      return eFix(fresh, e->type,
                  alphaRenameBinders(substExpr(e->e1, e->name, eVar(fresh))));
    }
    case ExprTag::TLam: {
      std::string fresh = freshTypeName(e->name);
      return eTLam(fresh, alphaRenameBinders(
                              substTypeInExpr(e->e1, e->name, tVar(fresh))));
    }
    case ExprTag::RcdE:
      return eRcd(e->name, alphaRenameBinders(e->e1));
    case ExprTag::Anno:
      return eAnno(alphaRenameBinders(e->e1), e->type);
    case ExprTag::Merge:
      return eMerge(alphaRenameBinders(e->e1), alphaRenameBinders(e->e2));
    case ExprTag::App:
      return eApp(alphaRenameBinders(e->e1), alphaRenameBinders(e->e2));
    case ExprTag::TApp:
      return eTApp(alphaRenameBinders(e->e1), e->type);
    case ExprTag::Proj:
      return eProj(alphaRenameBinders(e->e1), e->name);
  }
  return e;
}

namespace {

// Generation works type-first over a "friendly" family of types for which a
// term of exactly that type can always be written down: bases, Top, records
// and arrows over friendly types, disjoint intersections, and universals
// with closed friendly bodies.
class Generator {
 public:
  Generator(uint64_t seed, int maxDepth) : rng_(seed), depth_(maxDepth) {}

  std::pair<ExprRef, TypeRef> term() {
    int pattern = pick(10);
    switch (pattern) {
      case 0: return litPair();
      case 1: return mergeDisjoint(depth_);
      case 2: return annoSplittable(depth_);
      case 3: return application(depth_);
      case 4: return typeApplication(depth_);
      case 5: return projection(depth_);
      case 6: return fixpoint(depth_);
      case 7: return mergevDup(depth_);
      case 8: return splitLambda(depth_);
      default: return annoUp(depth_);
    }
  }

  std::pair<ExprRef, TypeRef> mergeDisjoint(int d) {
    for (int tries = 0; tries < 16; ++tries) {
      auto [e1, a1] = synth(d - 1);
      auto [e2, a2] = synth(d - 1);
      if (disjoint(TypeCtx{}, a1, a2))
        return {eMerge(e1, e2), tInter(a1, a2)};
    }
    return {eMerge(eInt(int1()), eBool(true)), tInter(tInt(), tBool())};
  }

  std::pair<ExprRef, TypeRef> annoSplittable(int d) {
    auto [e, a] = synth(d - 1);
    TypeRef target = tInter(a, a);  // always a supertype; splits by Sp-and
    return {eAnno(stripPForm(e, a), target), target};
  }

  std::pair<ExprRef, TypeRef> fixpoint(int d) {
    if (pick(2) == 0) {
      auto [body, a] = synth(d - 1);
      return {eFix("self", a, stripPForm(body, a)), a};
    }
    // Trait-style recursion: the second field projects the first through
    // the self reference; terminates under call-by-name.
    TypeRef a = tInter(tRcd("l1", tInt()), tRcd("l2", tInt()));
    ExprRef body = eMerge(eRcd("l1", eInt(int1())),
                          eRcd("l2", eProj(eVar("self"), "l1")));
    ExprRef fx = eFix("self", a, body);
    if (pick(2) == 0) return {fx, a};
    return {eProj(fx, pick(2) ? "l1" : "l2"), tInt()};
  }

 private:
  std::pair<ExprRef, TypeRef> litPair() {
    switch (pick(4)) {
      case 0: return {eInt(int1()), tInt()};
      case 1: return {eBool(pick(2) == 0), tBool()};
      case 2: return {eStr(pick(2) ? "a" : "b"), tString()};
      default: return {eTop(), tTop()};
    }
  }

  std::pair<ExprRef, TypeRef> annoUp(int d) {
    auto [e, a] = synth(d - 1);
    ExprRef base = stripPForm(e, a);
    switch (pick(3)) {
      case 0: return {eAnno(base, a), a};
      case 1: return {eAnno(base, tTop()), tTop()};
      default:
        if (a->tag == TypeTag::Inter) {
          TypeRef half = pick(2) ? a->lhs : a->rhs;
          return {eAnno(base, half), half};
        }
        return {eAnno(base, tInter(a, tTop())), tInter(a, tTop())};
    }
  }

  std::pair<ExprRef, TypeRef> application(int d) {
    TypeRef a = friendlyType(d - 2);
    auto [body, b] = synth(d - 2);
    ExprRef bodyE = stripPForm(body, b);
    std::string x = varName();
    if (pick(3) == 0) {
      // Identity-style body.
      bodyE = eVar(x);
      b = a;
    }
    ExprRef f = eAnno(eLam(x, a, bodyE), tArrow(a, b));
    return {eApp(f, exact(a, d - 2)), b};
  }

  std::pair<ExprRef, TypeRef> typeApplication(int d) {
    TypeRef bound = tInt();
    TypeRef instance;
    switch (pick(3)) {
      case 0: instance = tBool(); break;
      case 1: instance = tRcd("l", tInt()); break;
      // Impredicative: instantiate with a universal type.
      default: instance = tForall("Y", tInt(), tBool()); break;
    }
    auto [body, b] = synth(d - 2);
    ExprRef f = eAnno(eTLam("X", stripPForm(body, b)),
                      tForall("X", bound, b));
    return {eTApp(f, instance), b};
  }

  std::pair<ExprRef, TypeRef> projection(int d) {
    TypeRef f1 = friendlyType(d - 2);
    TypeRef f2 = friendlyType(d - 2);
    ExprRef r = eMerge(eRcd("l1", exact(f1, d - 2)),
                       eRcd("l2", exact(f2, d - 2)));
    TypeRef rt = tInter(tRcd("l1", f1), tRcd("l2", f2));
    if (pick(2) == 0) {
      r = eAnno(r, rt);
    }
    bool left = pick(2) == 0;
    return {eProj(r, left ? "l1" : "l2"), left ? f1 : f2};
  }

  // Duplicated annotated terms typed by the consistency rule.
  std::pair<ExprRef, TypeRef> mergevDup(int d) {
    auto [e, a] = synth(d - 2);
    ExprRef u = eAnno(stripPForm(e, a), a);
    return {eMerge(u, u), tInter(a, a)};
  }

  // A lambda checked against an intersection of arrows sharing the domain.
  std::pair<ExprRef, TypeRef> splitLambda(int d) {
    (void)d;
    std::string x = varName();
    ExprRef body = eMerge(eVar(x), eBool(pick(2) == 0));
    TypeRef ty = tInter(tArrow(tInt(), tInt()), tArrow(tInt(), tBool()));
    ExprRef f = eAnno(eLam(x, tInt(), body), ty);
    if (pick(2) == 0) return {f, ty};
    return {eApp(f, exact(tInt(), 0)), tInter(tInt(), tBool())};
  }

  // Any synthesizing term of some type.
  std::pair<ExprRef, TypeRef> synth(int d) {
    if (d <= 0) return litPair();
    switch (pick(8)) {
      case 0: return litPair();
      case 1: return mergeDisjoint(d);
      case 2: return annoUp(d);
      case 3: return application(d);
      case 4: return projection(d);
      case 5: return fixpoint(d);
      case 6: {
        TypeRef a = friendlyType(d - 1);
        return {exact(a, d - 1), a};
      }
      default: return annoSplittable(d);
    }
  }

  // A term with inferred type exactly a, for friendly a.
  ExprRef exact(const TypeRef& a, int d) {
    switch (a->tag) {
      case TypeTag::Int: return eInt(int1());
      case TypeTag::Bool: return eBool(pick(2) == 0);
      case TypeTag::String: return eStr(pick(2) ? "a" : "b");
      case TypeTag::Top: return eTop();
      case TypeTag::Rcd: return eRcd(a->name, exact(a->lhs, d - 1));
      case TypeTag::Arrow: {
        std::string x = varName();
        ExprRef body = exact(a->rhs, d - 1);
        if (eqType(a->lhs, a->rhs) && pick(2) == 0) body = eVar(x);
        return eAnno(eLam(x, a->lhs, body), a);
      }
      case TypeTag::Forall:
        return eAnno(eTLam(a->name, exact(a->rhs, d - 1)), a);
      case TypeTag::Inter:
        return eMerge(exact(a->lhs, d - 1), exact(a->rhs, d - 1));
      default:
        return eInt(int1());
    }
  }

  // Friendly types: a term of exactly this type always exists, and
  // intersections are disjoint by construction.
  TypeRef friendlyType(int d) {
    if (d <= 0) {
      switch (pick(4)) {
        case 0: return tInt();
        case 1: return tBool();
        case 2: return tString();
        default: return tTop();
      }
    }
    switch (pick(6)) {
      case 0:
        return tRcd(pick(2) ? "l" : "m", friendlyType(d - 1));
      case 1:
        return tArrow(friendlyType(d - 1), friendlyType(d - 1));
      case 2: {
        for (int tries = 0; tries < 8; ++tries) {
          TypeRef a = friendlyType(d - 1);
          TypeRef b = friendlyType(d - 1);
          if (disjoint(TypeCtx{}, a, b)) return tInter(a, b);
        }
        return tInter(tInt(), tBool());
      }
      case 3:
        return tForall("X", tInt(), friendlyType(d - 1));
      default:
        return friendlyType(0);
    }
  }

  // Merges require synthesizing components; bare lambdas and type
  // abstractions never synthesize, so wrap p-forms in their annotation.
  ExprRef stripPForm(const ExprRef& e, const TypeRef& a) {
    if (isPForm(e)) return eAnno(e, a);
    return e;
  }

  int pick(int n) { return static_cast<int>(rng_() % n); }
  long long int1() { return 1 + pick(5); }
  std::string varName() { return "x" + std::to_string(pick(3)); }

  std::mt19937_64 rng_;
  int depth_;
};

uint64_t caseSeed(uint64_t base, int index) {
  // splitmix64 over (base, index) so each case reproduces independently.
  uint64_t z = base + 0x9e3779b97f4a7c15ULL * (uint64_t)(index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::vector<GenCase> genWellTyped(const GenConfig& cfg) {
  std::vector<GenCase> out;
  out.reserve(cfg.termCount);
  for (int i = 0; i < cfg.termCount; ++i) {
    uint64_t seed = caseSeed(cfg.seed, i);
    Generator g(seed, cfg.maxDepth);
    std::pair<ExprRef, TypeRef> made;
    // The first three cases pin the generator contracts: a disjoint merge,
    // an annotation over a splittable type, and a terminating fixpoint.
    if (i == 0)
      made = g.mergeDisjoint(cfg.maxDepth);
    else if (i == 1)
      made = g.annoSplittable(cfg.maxDepth);
    else if (i == 2)
      made = g.fixpoint(cfg.maxDepth);
    else
      made = g.term();
    InferResult r = infer(TypeCtx{}, TermCtx{}, made.first);
    if (!inferOk(r))
      throw std::logic_error("generator produced an ill-typed term (seed " +
                             std::to_string(seed) +
                             "): " + prettyExpr(made.first) + " -- " +
                             inferError(r).message);
    if (!alphaEqType(inferType(r), made.second))
      throw std::logic_error("generator type mismatch (seed " +
                             std::to_string(seed) +
                             "): " + prettyExpr(made.first));
    out.push_back(GenCase{seed, made.first, inferType(r)});
  }
  return out;
}

namespace {

CaseResult failCase(const GenCase& c, const std::string& note) {
  return CaseResult{c.seed, false, note + ": " + prettyExpr(c.expr)};
}
CaseResult passCase(const GenCase& c) {
  return CaseResult{c.seed, true, ""};
}

SuiteReport runTermSuite(
    const std::string& name, const GenConfig& cfg,
    const std::function<std::optional<std::string>(const GenCase&)>& run) {
  SuiteReport report;
  report.suite = name;
  for (const GenCase& c : genWellTyped(cfg)) {
    if (auto bad = run(c)) {
      report.cases.push_back(failCase(c, *bad));
      ++report.failures;
    } else {
      report.cases.push_back(passCase(c));
    }
  }
  return report;
}

std::optional<std::string> checkDeterminism(const GenCase& c, long fuel) {
  ExprRef cur1 = c.expr;
  ExprRef cur2 = alphaRenameBinders(c.expr);
  for (long i = 0; i < fuel; ++i) {
    StepOutcome s1 = step(cur1);
    StepOutcome s1again = step(cur1);
    if (s1.kind != s1again.kind) return "step is not a function";
    if (s1.kind == StepOutcome::Kind::Stepped &&
        !eqExpr(s1.next, s1again.next))
      return "step is not a function";
    StepOutcome s2 = step(cur2);
    if (s1.kind != s2.kind) return "alpha-renaming changed the outcome";
    if (s1.kind != StepOutcome::Kind::Stepped) return std::nullopt;
    if (!alphaEqExpr(s1.next, s2.next))
      return "alpha-renaming changed the step result";
    cur1 = s1.next;
    cur2 = s2.next;
  }
  return std::nullopt;  // fuel exhausted without disagreement
}

}  // namespace

std::vector<std::string> suiteNames() {
  return {"determinism",      "progress", "preservation",
          "upcast",           "cast-consistency", "disjoint-soundness"};
}

SuiteReport runSuite(const std::string& name, const GenConfig& cfg) {
  if (name == "determinism") {
    return runTermSuite(name, cfg, [&](const GenCase& c) {
      return checkDeterminism(c, cfg.fuel);
    });
  }
  if (name == "progress") {
    return runTermSuite(name, cfg,
                        [&](const GenCase& c) -> std::optional<std::string> {
                          Trace t = eval(c.expr, cfg.fuel);
                          if (t.verdict == Trace::Verdict::Stuck)
                            return "stuck: " + t.stuckReason;
                          return std::nullopt;
                        });
  }
  if (name == "preservation") {
    return runTermSuite(
        name, cfg, [&](const GenCase& c) -> std::optional<std::string> {
          ExprRef cur = c.expr;
          for (long i = 0; i < cfg.fuel; ++i) {
            StepOutcome s = step(cur);
            if (s.kind != StepOutcome::Kind::Stepped) return std::nullopt;
            cur = s.next;
            if (auto bad = check(TypeCtx{}, TermCtx{}, cur, c.type))
              return "step result no longer checks against " +
                     prettyType(c.type) + " (" + bad->message + ")";
          }
          return std::nullopt;
        });
  }
  if (name == "upcast") {
    return runTermSuite(
        name, cfg, [&](const GenCase& c) -> std::optional<std::string> {
          std::optional<std::string> violation;
          StepHooks hooks;
          hooks.onCast = [&](const ExprRef& v, const TypeRef& a,
                             const ExprRef&) {
            if (violation) return;
            InferResult r = infer(TypeCtx{}, TermCtx{}, v);
            if (!inferOk(r)) {
              violation = "cast subject has no inferred type: " +
                          prettyExpr(v);
              return;
            }
            if (!subtype(TypeCtx{}, inferType(r), a))
              violation = "cast to a non-supertype: " +
                          prettyExpr(v) + " to " + prettyType(a);
          };
          eval(c.expr, cfg.fuel, &hooks);
          return violation;
        });
  }
  if (name == "cast-consistency") {
    return runTermSuite(
        name, cfg, [&](const GenCase& c) -> std::optional<std::string> {
          std::optional<std::string> violation;
          StepHooks hooks;
          hooks.onCast = [&](const ExprRef& v, const TypeRef& a,
                             const ExprRef& out) {
            if (violation) return;
            InferResult r = infer(TypeCtx{}, TermCtx{}, v);
            if (!inferOk(r)) return;
            auto self = cast(v, inferType(r));
            if (!self) return;
            if (!consistent(out, *self))
              violation = "casts of " + prettyExpr(v) + " under " +
                          prettyType(a) + " and " +
                          prettyType(inferType(r)) + " are inconsistent";
          };
          eval(c.expr, cfg.fuel, &hooks);
          return violation;
        });
  }
  if (name == "disjoint-soundness") {
    SuiteReport report;
    report.suite = name;
    TypeUniverse pairs = enumTypes(1);
    TypeUniverse supers = enumTypes(2);
    TypeCtx empty;
    uint64_t idx = 0;
    for (const auto& a : pairs.members) {
      for (const auto& b : pairs.members) {
        ++idx;
        if (!disjoint(empty, a, b)) continue;
        bool ok = oracleDisjointSpec(a, b, supers);
        CaseResult cr{idx, ok,
                      ok ? "" : prettyType(a) + " * " + prettyType(b)};
        if (!ok) {
          ++report.failures;
          report.cases.push_back(cr);
        }
      }
    }
    if (report.failures == 0)
      report.cases.push_back(CaseResult{0, true, "all disjoint pairs sound"});
    return report;
  }
  SuiteReport unknown;
  unknown.suite = name;
  unknown.failures = -1;
  return unknown;
}

}  // namespace fiplus
