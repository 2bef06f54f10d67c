// Command-line driver: type-check files, evaluate with optional step
// tracing, an interactive REPL, and the metatheory property suites.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fiplus/eval.hpp"
#include "fiplus/parser.hpp"
#include "fiplus/pretty.hpp"
#include "fiplus/testgen.hpp"
#include "fiplus/typing.hpp"

namespace {

using namespace fiplus;

constexpr int kExitOk = 0;
constexpr int kExitTypeError = 1;
constexpr int kExitParseError = 2;
constexpr int kExitIoError = 3;
constexpr int kExitFuel = 4;

long defaultFuel() {
  if (const char* env = std::getenv("FIPLUS_MAX_STEPS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return kDefaultFuel;
}

bool readFile(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

std::string describeTypeError(const std::string& path, const TypeError& e) {
  std::ostringstream os;
  os << path << ':' << e.span.line << ':' << e.span.col << ": "
     << typeErrorKindName(e.kind) << ": " << e.message;
  return os.str();
}

nlohmann::json typeErrorJson(const TypeError& e) {
  nlohmann::json j;
  j["kind"] = typeErrorKindName(e.kind);
  j["message"] = e.message;
  j["rule"] = e.rule;
  j["line"] = e.span.line;
  j["col"] = e.span.col;
  if (e.expected) j["expected"] = prettyType(e.expected);
  if (e.actual) j["actual"] = prettyType(e.actual);
  return j;
}

// Parses and type-checks; on success stores the program and its type.
int loadChecked(const std::string& path, bool json, ExprRef& program,
                TypeRef& type) {
  std::string contents;
  if (!readFile(path, contents)) {
    if (json) {
      nlohmann::json j;
      j["error"] = {{"kind", "IoError"}, {"message", "cannot read " + path}};
      std::cout << j.dump(2) << '\n';
    } else {
      std::cerr << "error: cannot read " << path << '\n';
    }
    return kExitIoError;
  }
  auto parsed = parseProgram(SourceFile{path, contents});
  if (auto* err = std::get_if<ParseError>(&parsed)) {
    if (json) {
      nlohmann::json j;
      j["error"] = {{"kind", "ParseError"},
                    {"message", err->message()},
                    {"line", err->span.line},
                    {"col", err->span.col}};
      std::cout << j.dump(2) << '\n';
    } else {
      std::cerr << err->render(path) << '\n';
    }
    return kExitParseError;
  }
  program = std::get<ExprRef>(parsed);
  InferResult r = infer(TypeCtx{}, TermCtx{}, program);
  if (!inferOk(r)) {
    if (json) {
      nlohmann::json j;
      j["error"] = typeErrorJson(inferError(r));
      std::cout << j.dump(2) << '\n';
    } else {
      std::cerr << describeTypeError(path, inferError(r)) << '\n';
    }
    return kExitTypeError;
  }
  type = inferType(r);
  return kExitOk;
}

int cmdCheck(const std::string& path, bool json) {
  ExprRef program;
  TypeRef type;
  int rc = loadChecked(path, json, program, type);
  if (rc != kExitOk) return rc;
  if (json) {
    nlohmann::json j;
    j["type"] = prettyType(type);
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << prettyType(type) << '\n';
  }
  return kExitOk;
}

int cmdRun(const std::string& path, long fuel, bool trace, bool json) {
  ExprRef program;
  TypeRef type;
  int rc = loadChecked(path, json, program, type);
  if (rc != kExitOk) return rc;
  Trace t = eval(program, fuel);
  if (json) {
    nlohmann::json j = nlohmann::json::parse(traceToJson(t));
    j["type"] = prettyType(type);
    if (!trace) j.erase("steps");
    std::cout << j.dump(2) << '\n';
  } else {
    if (trace) {
      std::cout << "INIT " << prettyExpr(program) << '\n';
      for (size_t i = 0; i < t.steps.size(); ++i) {
        std::cout << "STEP " << (i + 1) << ' ' << t.steps[i].rule;
        if (!t.steps[i].details.empty()) {
          std::cout << '[';
          for (size_t k = 0; k < t.steps[i].details.size(); ++k) {
            if (k) std::cout << ',';
            std::cout << t.steps[i].details[k];
          }
          std::cout << ']';
        }
        std::cout << ' ' << prettyExpr(t.steps[i].expr) << '\n';
      }
    }
    switch (t.verdict) {
      case Trace::Verdict::Value:
        std::cout << prettyExpr(t.result) << '\n';
        break;
      case Trace::Verdict::FuelExhausted:
        std::cout << "FUEL-EXHAUSTED\n";
        break;
      case Trace::Verdict::Stuck:
        std::cout << "STUCK " << t.stuckReason << '\n';
        break;
    }
  }
  if (t.verdict == Trace::Verdict::FuelExhausted) return kExitFuel;
  if (t.verdict == Trace::Verdict::Stuck) return kExitTypeError;
  return kExitOk;
}

int cmdRepl(long fuel) {
  std::cout << "fiplus repl -- :t e for types, :q to quit\n";
  std::string line;
  while (std::cout << "> " << std::flush, std::getline(std::cin, line)) {
    if (line == ":q") return kExitOk;
    if (line.empty()) continue;
    bool typeOnly = false;
    std::string text = line;
    if (line.rfind(":t ", 0) == 0) {
      typeOnly = true;
      text = line.substr(3);
    } else if (line[0] == ':') {
      std::cout << "unknown command; :t e or :q\n";
      continue;
    }
    auto parsed = parseProgram(SourceFile{"<repl>", text});
    if (auto* err = std::get_if<ParseError>(&parsed)) {
      std::cout << err->render("<repl>") << '\n';
      continue;
    }
    ExprRef e = std::get<ExprRef>(parsed);
    InferResult r = infer(TypeCtx{}, TermCtx{}, e);
    if (!inferOk(r)) {
      std::cout << describeTypeError("<repl>", inferError(r)) << '\n';
      continue;
    }
    if (typeOnly) {
      std::cout << prettyType(inferType(r)) << '\n';
      continue;
    }
    Trace t = eval(e, fuel);
    switch (t.verdict) {
      case Trace::Verdict::Value:
        std::cout << prettyExpr(t.result) << '\n';
        break;
      case Trace::Verdict::FuelExhausted:
        std::cout << "FUEL-EXHAUSTED\n";
        break;
      case Trace::Verdict::Stuck:
        std::cout << "STUCK " << t.stuckReason << '\n';
        break;
    }
  }
  return kExitOk;
}

int cmdSuite(const std::string& name, const GenConfig& cfg, bool json) {
  SuiteReport report = runSuite(name, cfg);
  if (report.failures < 0) {
    std::cerr << "unknown suite '" << name << "'; known:";
    for (const auto& s : suiteNames()) std::cerr << ' ' << s;
    std::cerr << '\n';
    return kExitTypeError;
  }
  if (json) {
    nlohmann::json j;
    j["suite"] = report.suite;
    j["failures"] = report.failures;
    j["cases"] = nlohmann::json::array();
    for (const auto& c : report.cases) {
      nlohmann::json jc;
      jc["seed"] = c.seed;
      jc["pass"] = c.pass;
      if (!c.detail.empty()) jc["detail"] = c.detail;
      j["cases"].push_back(std::move(jc));
    }
    std::cout << j.dump(2) << '\n';
  } else {
    for (const auto& c : report.cases) {
      std::cout << "SEED " << c.seed << (c.pass ? " PASS " : " FAIL ")
                << report.suite;
      if (!c.detail.empty()) std::cout << ' ' << c.detail;
      std::cout << '\n';
    }
    std::cout << report.suite << ": " << report.failures << " failure(s) in "
              << report.cases.size() << " case(s)\n";
  }
  return report.failures == 0 ? kExitOk : kExitTypeError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fiplus -- disjoint intersection types with a merge operator"};
  app.require_subcommand(1);

  std::string path;
  bool json = false;
  bool trace = false;
  long maxSteps = defaultFuel();

  auto* check = app.add_subcommand("check", "type-check a file");
  check->add_option("file", path)->required();
  check->add_flag("--json", json);

  auto* run = app.add_subcommand("run", "evaluate a file");
  run->add_option("file", path)->required();
  run->add_flag("--trace", trace, "print each reduction step");
  run->add_option("--max-steps", maxSteps, "fuel for the evaluator");
  run->add_flag("--json", json);

  auto* repl = app.add_subcommand("repl", "interactive loop");
  repl->add_option("--max-steps", maxSteps);

  std::string suiteName;
  GenConfig cfg;
  auto* suite = app.add_subcommand("suite", "run a property suite");
  suite->add_option("name", suiteName)->required();
  suite->add_option("--seed", cfg.seed);
  suite->add_option("--count", cfg.termCount);
  suite->add_option("--depth", cfg.maxDepth);
  suite->add_option("--fuel", cfg.fuel);
  suite->add_flag("--json", json);

  CLI11_PARSE(app, argc, argv);

  if (check->parsed()) return cmdCheck(path, json);
  if (run->parsed()) return cmdRun(path, maxSteps, trace, json);
  if (repl->parsed()) return cmdRepl(maxSteps);
  if (suite->parsed()) return cmdSuite(suiteName, cfg, json);
  return kExitOk;
}
