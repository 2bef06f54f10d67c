#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fiplus/syntax.hpp"

// Call-by-name type-directed operational semantics: top-like value
// generation, value casting, expression wrapping, parallel application,
// single-step reduction and a fuel-bounded driver with tracing.

namespace fiplus {

struct Argument {
  enum class Kind { Term, Type, Label } kind;
  ExprRef term;       // Kind::Term
  TypeRef type;       // Kind::Type
  std::string label;  // Kind::Label

  static Argument ofTerm(ExprRef e) {
    return {Kind::Term, std::move(e), nullptr, ""};
  }
  static Argument ofType(TypeRef t) {
    return {Kind::Type, nullptr, std::move(t), ""};
  }
  static Argument ofLabel(std::string l) {
    return {Kind::Label, nullptr, nullptr, std::move(l)};
  }
};

// Observers for metatheory tests; fired at each top-level cast (Step-annov
// redexes) and wrap (argument wrapping in parallel application).
struct StepHooks {
  std::function<void(const ExprRef& v, const TypeRef& a, const ExprRef& out)>
      onCast;
  std::function<void(const ExprRef& e, const TypeRef& a, const ExprRef& out)>
      onWrap;
};

// The canonical value of an ordinary top-like type: () for Top, and
// annotated trivial lambdas / records / type lambdas for the rest.
// Precondition: ordinary(a) and topLike({}, a).
ExprRef genTopLikeValue(const TypeRef& a);

// Casting v under a. Splittable targets duplicate the value into a merge;
// ordinary top-like targets produce the generated value; literals cast to
// their own base type; annotated terms move to the new annotation when the
// old one is a subtype; merges cast by whichever component succeeds (left
// first). Bare records cast by matching label. Returns nullopt when no rule
// applies (impossible for well-typed inputs). topRule, when non-null,
// receives the outermost rule name.
std::optional<ExprRef> cast(const ExprRef& v, const TypeRef& a,
                            std::string* topRule = nullptr);

// Expression wrapping: duplicates e across the split of a, generating
// values for top-like parts and annotating the rest. Total for well-formed
// closed a.
ExprRef wrap(const ExprRef& e, const TypeRef& a,
             std::string* topRule = nullptr);

// Parallel application of a value to an argument. Merges distribute the
// argument (record projection only into components carrying the label);
// annotated lambdas wrap the argument with their parameter type before
// substituting; annotated type lambdas substitute into body and annotation;
// annotated records project to the annotated field. Returns nullopt on
// ill-typed combinations.
std::optional<ExprRef> papp(const ExprRef& v, const Argument& arg,
                            std::vector<std::string>* wrapRules = nullptr,
                            const StepHooks* hooks = nullptr);

struct StepOutcome {
  enum class Kind { Stepped, IsValue, Stuck } kind;
  ExprRef next;                      // Stepped
  std::string rule;                  // rule fired at the redex
  std::vector<std::string> details;  // top-level cast/wrap rules this step
  std::string reason;                // Stuck
};

// One deterministic reduction step. Context steps report the inner redex's
// rule. Both sides of a merge step together when both can.
StepOutcome step(const ExprRef& e, const StepHooks* hooks = nullptr);

struct TraceStep {
  std::string rule;
  std::vector<std::string> details;
  ExprRef expr;
};

struct Trace {
  enum class Verdict { Value, FuelExhausted, Stuck } verdict;
  ExprRef initial;
  std::vector<TraceStep> steps;
  ExprRef result;          // final expression reached
  std::string stuckReason;
};

constexpr long kDefaultFuel = 100000;

Trace eval(const ExprRef& e, long fuel = kDefaultFuel,
           const StepHooks* hooks = nullptr);

// Line-oriented form: one "STEP <n> <rule>[detail,...] <pretty-expr>" per
// step, preceded by "INIT <pretty-expr>" and followed by the verdict line.
std::string traceToText(const Trace& t);

// Single JSON document: { initial, steps: [{rule, details, expr}], verdict,
// result }.
std::string traceToJson(const Trace& t);

}  // namespace fiplus
