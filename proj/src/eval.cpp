#include "fiplus/eval.hpp"

#include <cassert>
#include <sstream>

#include <json.hpp>

#include "fiplus/pretty.hpp"
#include "fiplus/subst.hpp"
#include "fiplus/subtyping.hpp"
#include "fiplus/typing.hpp"

namespace fiplus {

ExprRef genTopLikeValue(const TypeRef& a) {
  assert(ordinary(a) && topLike(TypeCtx{}, a));
  switch (a->tag) {
    case TypeTag::Top:
      return eTop();
    case TypeTag::Arrow:
      return eAnno(eLam("x", tTop(), eTop()), a);
    case TypeTag::Rcd:
      return eAnno(eRcd(a->name, eTop()), a);
    case TypeTag::Forall:
      return eAnno(eTLam(a->name, eTop()), a);
    default:
      assert(false && "genTopLikeValue: not an ordinary top-like type");
      return eTop();
  }
}

std::optional<ExprRef> cast(const ExprRef& v, const TypeRef& a,
                            std::string* topRule) {
  if (auto s = split(a)) {
    auto l = cast(v, s->left);
    if (!l) return std::nullopt;
    auto r = cast(v, s->right);
    if (!r) return std::nullopt;
    if (topRule) *topRule = "Cast-and";
    return eMerge(*l, *r);
  }
  if (topLike(TypeCtx{}, a)) {
    if (topRule) *topRule = "Cast-top";
    return genTopLikeValue(a);
  }
  switch (v->tag) {
    case ExprTag::LitInt:
      if (a->tag == TypeTag::Int) {
        if (topRule) *topRule = "Cast-int";
        return v;
      }
      return std::nullopt;
    case ExprTag::LitBool:
      if (a->tag == TypeTag::Bool) {
        if (topRule) *topRule = "Cast-bool";
        return v;
      }
      return std::nullopt;
    case ExprTag::LitStr:
      if (a->tag == TypeTag::String) {
        if (topRule) *topRule = "Cast-str";
        return v;
      }
      return std::nullopt;
    case ExprTag::Anno:
      if (subtype(TypeCtx{}, v->type, a)) {
        if (topRule) *topRule = "Cast-anno";
        return eAnno(v->e1, a);
      }
      return std::nullopt;
    case ExprTag::RcdE:
      // An unannotated record stands in for the annotated form at its
      // synthesized type; the subtype premise selects among same-label
      // merge components exactly as it does for annotated terms.
      if (a->tag == TypeTag::Rcd && a->name == v->name) {
        InferResult field = infer(TypeCtx{}, TermCtx{}, v->e1);
        if (!inferOk(field)) return std::nullopt;
        if (!subtype(TypeCtx{}, inferType(field), a->lhs)) return std::nullopt;
        if (topRule) *topRule = "Cast-rcd";
        return eAnno(v, a);
      }
      return std::nullopt;
    case ExprTag::Merge: {
      if (auto l = cast(v->e1, a)) {
        if (topRule) *topRule = "Cast-mergel";
        return l;
      }
      if (auto r = cast(v->e2, a)) {
        if (topRule) *topRule = "Cast-merger";
        return r;
      }
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

ExprRef wrap(const ExprRef& e, const TypeRef& a, std::string* topRule) {
  if (auto s = split(a)) {
    if (topRule) *topRule = "EW-and";
    return eMerge(wrap(e, s->left), wrap(e, s->right));
  }
  if (topLike(TypeCtx{}, a)) {
    if (topRule) *topRule = "EW-top";
    return genTopLikeValue(a);
  }
  if (topRule) *topRule = "EW-anno";
  return eAnno(e, a);
}

namespace {

bool hasLabel(const ExprRef& v, const std::string& label) {
  switch (v->tag) {
    case ExprTag::RcdE:
      return v->name == label;
    case ExprTag::Anno:
      return v->e1->tag == ExprTag::RcdE && v->e1->name == label;
    case ExprTag::Merge:
      return hasLabel(v->e1, label) || hasLabel(v->e2, label);
    default:
      return false;
  }
}

}  // namespace

std::optional<ExprRef> papp(const ExprRef& v, const Argument& arg,
                            std::vector<std::string>* wrapRules,
                            const StepHooks* hooks) {
  if (v->tag == ExprTag::Merge) {
    if (arg.kind == Argument::Kind::Label) {
      // Projection reaches only the components that carry the label.
      bool l = hasLabel(v->e1, arg.label);
      bool r = hasLabel(v->e2, arg.label);
      if (l && r) {
        auto a = papp(v->e1, arg, wrapRules, hooks);
        if (!a) return std::nullopt;
        auto b = papp(v->e2, arg, wrapRules, hooks);
        if (!b) return std::nullopt;
        return eMerge(*a, *b);
      }
      if (l) return papp(v->e1, arg, wrapRules, hooks);
      if (r) return papp(v->e2, arg, wrapRules, hooks);
      return std::nullopt;
    }
    auto a = papp(v->e1, arg, wrapRules, hooks);
    if (!a) return std::nullopt;
    auto b = papp(v->e2, arg, wrapRules, hooks);
    if (!b) return std::nullopt;
    return eMerge(*a, *b);
  }
  if (v->tag == ExprTag::RcdE && arg.kind == Argument::Kind::Label &&
      v->name == arg.label) {
    // Projection of an unannotated record; annotate with the synthesized
    // field type so the result never exposes a bare record inside an
    // enclosing merge.
    InferResult field = infer(TypeCtx{}, TermCtx{}, v->e1);
    if (!inferOk(field)) return std::nullopt;
    return eAnno(v->e1, inferType(field));
  }
  if (v->tag != ExprTag::Anno) return std::nullopt;
  const ExprRef& p = v->e1;
  switch (arg.kind) {
    case Argument::Kind::Term: {
      if (p->tag != ExprTag::Lam) return std::nullopt;
      auto form = appDist(v->type);
      if (!form || form->kind != ApplicableKind::Arrow) return std::nullopt;
      std::string rule;
      ExprRef wrapped = wrap(arg.term, p->type, &rule);
      if (wrapRules) wrapRules->push_back(rule);
      if (hooks && hooks->onWrap) hooks->onWrap(arg.term, p->type, wrapped);
      return eAnno(substExpr(p->e1, p->name, wrapped), form->rhs);
    }
    case Argument::Kind::Type: {
      if (p->tag != ExprTag::TLam) return std::nullopt;
      auto form = appDist(v->type);
      if (!form || form->kind != ApplicableKind::Forall) return std::nullopt;
      ExprRef body = substTypeInExpr(p->e1, p->name, arg.type);
      TypeRef resultType =
          substTypeInType(form->rhs, form->binderOrLabel, arg.type);
      return eAnno(body, resultType);
    }
    case Argument::Kind::Label: {
      if (p->tag != ExprTag::RcdE || p->name != arg.label)
        return std::nullopt;
      auto field = projField(v->type, arg.label);
      if (!field) return std::nullopt;
      return eAnno(p->e1, *field);
    }
  }
  return std::nullopt;
}

namespace {

StepOutcome stepped(ExprRef next, std::string rule,
                    std::vector<std::string> details = {}) {
  return StepOutcome{StepOutcome::Kind::Stepped, std::move(next),
                     std::move(rule), std::move(details), ""};
}

StepOutcome stuck(std::string reason) {
  return StepOutcome{StepOutcome::Kind::Stuck, nullptr, "", {},
                     std::move(reason)};
}

StepOutcome pappStep(const ExprRef& e, const Argument& arg, const char* rule,
                     const StepHooks* hooks) {
  std::vector<std::string> wrapRules;
  auto r = papp(e->e1, arg, &wrapRules, hooks);
  if (!r) return stuck("inapplicable value in " + std::string(rule));
  return stepped(*r, rule, std::move(wrapRules));
}

}  // namespace

StepOutcome step(const ExprRef& e, const StepHooks* hooks) {
  if (isValue(e))
    return StepOutcome{StepOutcome::Kind::IsValue, nullptr, "", {}, ""};
  switch (e->tag) {
    case ExprTag::Var:
      return stuck("unbound variable '" + e->name + "'");
    case ExprTag::Anno: {
      if (isValue(e->e1)) {
        // e itself is not a value, so e->e1 is not a bare p-form.
        std::string rule;
        auto r = cast(e->e1, e->type, &rule);
        if (!r)
          return stuck("cannot cast " + prettyExpr(e->e1) + " to " +
                       prettyType(e->type));
        if (hooks && hooks->onCast) hooks->onCast(e->e1, e->type, *r);
        return stepped(*r, "Step-annov", {rule});
      }
      StepOutcome inner = step(e->e1, hooks);
      if (inner.kind != StepOutcome::Kind::Stepped) return inner;
      return stepped(eAnno(inner.next, e->type), inner.rule,
                     std::move(inner.details));
    }
    case ExprTag::App: {
      if (isValue(e->e1))
        return pappStep(e, Argument::ofTerm(e->e2), "Step-papp", hooks);
      StepOutcome inner = step(e->e1, hooks);
      if (inner.kind != StepOutcome::Kind::Stepped) return inner;
      return stepped(eApp(inner.next, e->e2), inner.rule,
                     std::move(inner.details));
    }
    case ExprTag::TApp: {
      if (isValue(e->e1))
        return pappStep(e, Argument::ofType(e->type), "Step-ptapp", hooks);
      StepOutcome inner = step(e->e1, hooks);
      if (inner.kind != StepOutcome::Kind::Stepped) return inner;
      return stepped(eTApp(inner.next, e->type), inner.rule,
                     std::move(inner.details));
    }
    case ExprTag::Proj: {
      if (isValue(e->e1))
        return pappStep(e, Argument::ofLabel(e->name), "Step-pproj", hooks);
      StepOutcome inner = step(e->e1, hooks);
      if (inner.kind != StepOutcome::Kind::Stepped) return inner;
      return stepped(eProj(inner.next, e->name), inner.rule,
                     std::move(inner.details));
    }
    case ExprTag::Fix:
      return stepped(eAnno(substExpr(e->e1, e->name, e), e->type),
                     "Step-fix");
    case ExprTag::Merge: {
      bool lv = isValue(e->e1);
      bool rv = isValue(e->e2);
      if (lv) {
        StepOutcome r = step(e->e2, hooks);
        if (r.kind != StepOutcome::Kind::Stepped) return r;
        return stepped(eMerge(e->e1, r.next), r.rule, std::move(r.details));
      }
      if (rv) {
        StepOutcome l = step(e->e1, hooks);
        if (l.kind != StepOutcome::Kind::Stepped) return l;
        return stepped(eMerge(l.next, e->e2), l.rule, std::move(l.details));
      }
      StepOutcome l = step(e->e1, hooks);
      if (l.kind != StepOutcome::Kind::Stepped) return l;
      StepOutcome r = step(e->e2, hooks);
      if (r.kind != StepOutcome::Kind::Stepped) return r;
      std::vector<std::string> details = std::move(l.details);
      details.insert(details.end(), r.details.begin(), r.details.end());
      return stepped(eMerge(l.next, r.next), "Step-merge",
                     std::move(details));
    }
    default:
      return stuck("no applicable reduction rule");
  }
}

Trace eval(const ExprRef& e, long fuel, const StepHooks* hooks) {
  Trace t;
  t.initial = e;
  ExprRef cur = e;
  for (long i = 0; i < fuel; ++i) {
    StepOutcome out = step(cur, hooks);
    switch (out.kind) {
      case StepOutcome::Kind::IsValue:
        t.verdict = Trace::Verdict::Value;
        t.result = cur;
        return t;
      case StepOutcome::Kind::Stuck:
        t.verdict = Trace::Verdict::Stuck;
        t.result = cur;
        t.stuckReason = out.reason;
        return t;
      case StepOutcome::Kind::Stepped:
        cur = out.next;
        t.steps.push_back(TraceStep{std::move(out.rule),
                                    std::move(out.details), cur});
        break;
    }
  }
  t.verdict = Trace::Verdict::FuelExhausted;
  t.result = cur;
  return t;
}

namespace {
const char* verdictName(Trace::Verdict v) {
  switch (v) {
    case Trace::Verdict::Value: return "VALUE";
    case Trace::Verdict::FuelExhausted: return "FUEL-EXHAUSTED";
    case Trace::Verdict::Stuck: return "STUCK";
  }
  return "?";
}
}  // namespace

std::string traceToText(const Trace& t) {
  std::ostringstream os;
  os << "INIT " << prettyExpr(t.initial) << '\n';
  for (size_t i = 0; i < t.steps.size(); ++i) {
    const TraceStep& s = t.steps[i];
    os << "STEP " << (i + 1) << ' ' << s.rule;
    if (!s.details.empty()) {
      os << '[';
      for (size_t j = 0; j < s.details.size(); ++j) {
        if (j) os << ',';
        os << s.details[j];
      }
      os << ']';
    }
    os << ' ' << prettyExpr(s.expr) << '\n';
  }
  os << verdictName(t.verdict);
  if (t.verdict == Trace::Verdict::Value)
    os << ' ' << prettyExpr(t.result);
  if (t.verdict == Trace::Verdict::Stuck) os << ' ' << t.stuckReason;
  os << '\n';
  return os.str();
}

std::string traceToJson(const Trace& t) {
  nlohmann::json doc;
  doc["initial"] = prettyExpr(t.initial);
  doc["steps"] = nlohmann::json::array();
  for (const TraceStep& s : t.steps) {
    nlohmann::json js;
    js["rule"] = s.rule;
    js["details"] = s.details;
    js["expr"] = prettyExpr(s.expr);
    doc["steps"].push_back(std::move(js));
  }
  doc["verdict"] = verdictName(t.verdict);
  if (t.result) doc["result"] = prettyExpr(t.result);
  if (t.verdict == Trace::Verdict::Stuck) doc["reason"] = t.stuckReason;
  return doc.dump(2);
}

}  // namespace fiplus
