#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fiplus/syntax.hpp"

// Enumeration of type universes, seed-deterministic generation of well-typed
// terms, brute-force oracles and the metatheory property suites.

namespace fiplus {

struct TypeUniverse {
  int depth = 0;
  std::vector<std::string> bases;
  bool includeForalls = false;
  std::vector<TypeRef> members;  // cumulative up to depth, deterministic order
};

// All closed types over {Int, Bool, Top, Bot} with constructors &, -> and
// {l:_} (single label) up to the given constructor depth; depth 0 is the
// bases. includeForalls additionally adds depth-1 universals over the bases.
TypeUniverse enumTypes(int depth, bool includeForalls = false);

struct GenConfig {
  uint64_t seed = 1;
  int maxDepth = 5;
  int termCount = 1000;
  long fuel = 10000;
};

// A generated closed well-typed term together with its inferred type and the
// per-case seed that reproduces it.
struct GenCase {
  uint64_t seed;
  ExprRef expr;
  TypeRef type;
};

// Seed-deterministic stream of closed well-typed terms, biased toward
// merges, annotations over splittable types, fixpoints and type
// applications. Every emitted term synthesizes its reported type.
std::vector<GenCase> genWellTyped(const GenConfig& cfg);

// Renames every binder in e to a globally fresh name.
ExprRef alphaRenameBinders(const ExprRef& e);

// Specification-level disjointness: every common supertype of a and b in
// the universe is top-like.
bool oracleDisjointSpec(const TypeRef& a, const TypeRef& b,
                        const TypeUniverse& universe);

struct CaseResult {
  uint64_t seed;
  bool pass;
  std::string detail;  // pretty term or counterexample note
};

struct SuiteReport {
  std::string suite;
  std::vector<CaseResult> cases;
  int failures = 0;
};

// Known suites: determinism, progress, preservation, upcast,
// cast-consistency, disjoint-soundness. Unknown names yield an empty report
// with failures = -1.
SuiteReport runSuite(const std::string& name, const GenConfig& cfg);

std::vector<std::string> suiteNames();

}  // namespace fiplus
