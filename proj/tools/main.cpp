// travcheck -- memory-safety checking for array-traversal loops.
//
// Subcommands:
//   check    bounded sweep over array sizes with loop unwinding
//   ct       completeness threshold plus the unbounded verdict it justifies
//   vc       memory-safety verification condition, optionally as SMT-LIB2
//   falsify  side-by-side bounded vs. threshold verdict, exposing missed errors
//   corpus   ct verdicts for every *.trav file in a directory
//
// Exit codes: 0 clean/agreement, 1 error found (or pitfall demonstrated),
// 2 bounded-clean but unwinding incomplete, 3 program outside the supported
// class, 64 usage, 65 parse error.

#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "travcheck/bmc.hpp"
#include "travcheck/ct.hpp"
#include "travcheck/interp.hpp"
#include "travcheck/lang.hpp"
#include "travcheck/vcgen.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace travcheck;

namespace {

constexpr const char* kTool = "travcheck";
constexpr const char* kVersion = "0.1.0";
constexpr std::uint64_t kMaxSize = 4294967296ull;  // 2^32, the supported size range

// ---------------------------------------------------------------- output --

bool useColor() {
  return ::isatty(::fileno(stdout)) != 0 && std::getenv("NO_COLOR") == nullptr;
}

std::string paintGood(const std::string& text) {
  return useColor() ? "\033[32m" + text + "\033[0m" : text;
}

std::string paintBad(const std::string& text) {
  return useColor() ? "\033[31m" + text + "\033[0m" : text;
}

class Stopwatch {
 public:
  std::uint64_t elapsedMs() const {
    const auto d = std::chrono::steady_clock::now() - start_;
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(d).count());
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

json reportSkeleton(const std::string& command, const std::string& input) {
  json r;
  r["tool"] = kTool;
  r["version"] = kVersion;
  r["command"] = command;
  r["input"] = input;
  return r;
}

void printJson(const json& r) {
  // error messages can quote raw bytes from input files
  std::cout << r.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) << "\n";
}

// ---------------------------------------------------------------- input ---

struct SourceInput {
  std::string label;  // path, or the inline text itself
  std::string text;
};

/// Usage failure outside CLI11's own parsing (bad flag combinations,
/// unreadable files, out-of-range numbers).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

SourceInput loadSource(const std::string& path, const std::string& inlineExpr) {
  if (!inlineExpr.empty() && !path.empty()) {
    throw UsageError("give either a file path or --expr, not both");
  }
  if (!inlineExpr.empty()) return {inlineExpr, inlineExpr};
  if (path.empty()) throw UsageError("missing input: give a file path or --expr");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read file: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return {path, text.str()};
}

void reportParseError(const SourceInput& src, const ParseError& e, bool jsonFlag,
                      const std::string& command, const Stopwatch& watch) {
  std::cerr << src.label << ":" << e.line() << ":" << e.column()
            << ": error: " << e.what() << "\n";
  if (jsonFlag) {
    json r = reportSkeleton(command, src.label);
    r["verdict"] = {{"kind", "parse-error"}};
    r["details"] = {{"message", e.what()}, {"line", e.line()}, {"column", e.column()}};
    r["elapsedMs"] = watch.elapsedMs();
    printJson(r);
  }
}

const char* kClassHint =
    "not in the supported class: expected a single loop "
    "`for i in [L : s-R] do !a[i+Z]` with integer constants in the three "
    "marked positions";

void reportNotTrav(const SourceInput& src, bool jsonFlag, const std::string& command,
                   const Stopwatch& watch) {
  std::cerr << src.label << ": " << kClassHint << "\n";
  if (jsonFlag) {
    json r = reportSkeleton(command, src.label);
    r["verdict"] = {{"kind", "not-trav"}};
    r["details"] = {{"message", kClassHint}};
    r["elapsedMs"] = watch.elapsedMs();
    printJson(r);
  }
}

// ------------------------------------------------------------- commands ---

std::string describeError(const MemError& err) {
  std::ostringstream out;
  out << "out-of-bounds error for arrays of size " << err.size << ": access index "
      << err.index << " at iteration " << err.iteration;
  return out.str();
}

int cmdCheck(const SourceInput& src, std::uint64_t sizeBound,
             std::optional<std::uint64_t> unwind, bool jsonFlag) {
  Stopwatch watch;
  Program p;
  try {
    p = parse(src.text);
  } catch (const ParseError& e) {
    reportParseError(src, e, jsonFlag, "check", watch);
    return 65;
  }

  const BoundedVerdict v = checkBounded(p, BmcConfig{sizeBound, unwind});
  json r = reportSkeleton("check", src.label);
  json details;
  details["sizeBound"] = sizeBound;
  if (unwind) details["unwind"] = *unwind;
  else details["unwind"] = "unlimited";

  int exitCode = 0;
  if (const auto* ce = std::get_if<CounterExample>(&v)) {
    r["verdict"] = {{"kind", "counterexample"},
                    {"size", ce->size},
                    {"accessIndex", ce->error.index},
                    {"iteration", ce->error.iteration}};
    if (!jsonFlag) std::cout << paintBad(describeError(ce->error)) << "\n";
    exitCode = 1;
  } else {
    const auto& clean = std::get<NoErrorWithinBounds>(v);
    r["verdict"] = {{"kind", "no-error-within-bounds"},
                    {"unwindingComplete", clean.unwindingComplete}};
    details["sizesChecked"] = clean.sizesChecked;
    if (!jsonFlag) {
      std::cout << paintGood("no errors within the bounds") << " (sizes 0.."
                << sizeBound
                << (clean.unwindingComplete
                        ? ", loops fully unwound)"
                        : ", some loops truncated by the unwinding depth; not a proof)")
                << "\n";
    }
    exitCode = clean.unwindingComplete ? 0 : 2;
  }
  r["details"] = std::move(details);
  r["elapsedMs"] = watch.elapsedMs();
  if (jsonFlag) printJson(r);
  return exitCode;
}

json oracleJson(const OracleReport& report) {
  return {{"horizon", report.horizon},
          {"byCandidate", report.byCandidate},
          {"byBrute", report.byBrute},
          {"ok", report.ok}};
}

std::string formatCt(const CtSet& ct) {
  std::ostringstream out;
  out << "{";
  for (std::size_t k = 0; k < ct.sizes.size(); ++k) {
    if (k > 0) out << ", ";
    out << ct.sizes[k];
  }
  out << "}";
  return out.str();
}

int cmdCt(const SourceInput& src, std::optional<std::uint64_t> oracleHorizon,
          bool jsonFlag) {
  Stopwatch watch;
  Program p;
  try {
    p = parse(src.text);
  } catch (const ParseError& e) {
    reportParseError(src, e, jsonFlag, "ct", watch);
    return 65;
  }
  const auto t = recognizeTrav(p);
  if (!t) {
    reportNotTrav(src, jsonFlag, "ct", watch);
    return 3;
  }

  const CtSet ct = deriveCt(*t);
  const UnboundedVerdict v = unboundedVerdict(*t);
  std::optional<OracleReport> oracle;
  if (oracleHorizon) oracle = verifyCtOracle(*t, ct, *oracleHorizon);

  json r = reportSkeleton("ct", src.label);
  json details;
  details["domainNote"] = ct.domainNote;
  if (oracle) details["oracle"] = oracleJson(*oracle);

  int exitCode = 0;
  if (const auto* bad = std::get_if<UnsafeAt>(&v)) {
    r["verdict"] = {{"kind", "unsafe-at"},
                    {"size", bad->size},
                    {"accessIndex", bad->error.index},
                    {"iteration", bad->error.iteration},
                    {"ct", ct.sizes}};
    if (!jsonFlag) {
      std::cout << "completeness threshold: " << formatCt(ct) << " for "
                << ct.domainNote << "\n";
      std::cout << paintBad("unsafe at size " + std::to_string(bad->size)) << ": "
                << describeError(bad->error) << "\n";
    }
    exitCode = 1;
  } else {
    r["verdict"] = {{"kind", "safe-all-sizes"}, {"ct", ct.sizes}};
    if (!jsonFlag) {
      std::cout << "completeness threshold: " << formatCt(ct) << " for "
                << ct.domainNote << "\n";
      std::cout << paintGood("safe for all sizes")
                << ": every threshold size runs without memory errors\n";
    }
  }
  if (!jsonFlag && oracle) {
    std::cout << "oracle check (horizon " << oracle->horizon << "): "
              << (oracle->ok ? "ok, candidate agrees with brute force"
                             : "MISMATCH, candidate disagrees with brute force")
              << "\n";
  }
  r["details"] = std::move(details);
  r["elapsedMs"] = watch.elapsedMs();
  if (jsonFlag) printJson(r);
  return exitCode;
}

int cmdVc(const SourceInput& src, const std::string& smtPath,
          std::optional<std::uint64_t> atSize) {
  Stopwatch watch;
  Program p;
  try {
    p = parse(src.text);
  } catch (const ParseError& e) {
    reportParseError(src, e, false, "vc", watch);
    return 65;
  }
  const auto t = recognizeTrav(p);
  if (!t) {
    reportNotTrav(src, false, "vc", watch);
    return 3;
  }

  const Formula vc = genMemsafeVc(*t);
  std::cout << "vc: " << renderFormula(vc) << "\n";
  if (atSize) {
    std::cout << "vc at s=" << *atSize << ": " << (evalVc(vc, *atSize) ? "true" : "false")
              << "\n";
  }
  if (!smtPath.empty()) {
    std::ofstream out(smtPath, std::ios::binary);
    if (!out) throw UsageError("cannot write file: " + smtPath);
    out << exportSmt(vc, atSize);
    std::cout << "smt written to " << smtPath
              << (atSize ? " (per-size s=" + std::to_string(*atSize) + ")"
                         : " (universal)")
              << "\n";
  }
  return 0;
}

int cmdFalsify(const SourceInput& src, std::uint64_t sizeBound) {
  Stopwatch watch;
  Program p;
  try {
    p = parse(src.text);
  } catch (const ParseError& e) {
    reportParseError(src, e, false, "falsify", watch);
    return 65;
  }
  const auto t = recognizeTrav(p);
  if (!t) {
    reportNotTrav(src, false, "falsify", watch);
    return 3;
  }

  const BoundedVerdict bounded = checkBounded(p, BmcConfig{sizeBound, std::nullopt});
  const UnboundedVerdict unbounded = unboundedVerdict(*t);
  const auto* ce = std::get_if<CounterExample>(&bounded);
  const auto* bad = std::get_if<UnsafeAt>(&unbounded);

  std::cout << "BMC(S=" << sizeBound << "): ";
  if (ce) {
    std::cout << "counterexample at size " << ce->size << " (access index "
              << ce->error.index << ", iteration " << ce->error.iteration << ")\n";
  } else {
    std::cout << "no errors within the bounds\n";
  }
  std::cout << "CT check: ";
  if (bad) {
    std::cout << "unsafe at size " << bad->size << " (access index " << bad->error.index
              << ")\n";
  } else {
    std::cout << "safe for all sizes\n";
  }

  if (ce != nullptr && bad == nullptr) {
    // a counterexample for an instance that is safe at its threshold would
    // mean the checker and the threshold disagree
    throw std::logic_error("bounded counterexample for a threshold-safe instance");
  }
  if (ce == nullptr && bad != nullptr) {
    std::cout << paintBad("pitfall") << ": the bounded proof missed the error at size "
              << bad->size << "\n";
    return 1;
  }
  std::cout << paintGood("agreement") << ": bounded and unbounded verdicts coincide\n";
  return 0;
}

int cmdCorpus(const std::string& dir, bool jsonFlag) {
  Stopwatch watch;
  if (!fs::is_directory(dir)) throw UsageError("not a directory: " + dir);

  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".trav") {
      files.push_back(entry.path().string());
    }
  }
  std::sort(files.begin(), files.end());

  std::uint64_t safe = 0, unsafeCount = 0, unrecognized = 0, parseErrors = 0;
  json reports = json::array();
  for (const std::string& file : files) {
    Stopwatch fileWatch;
    json r = reportSkeleton("ct", file);
    std::string line;
    try {
      std::ifstream in(file, std::ios::binary);
      std::ostringstream text;
      text << in.rdbuf();
      const Program p = parse(text.str());
      const auto t = recognizeTrav(p);
      if (!t) {
        ++unrecognized;
        r["verdict"] = {{"kind", "not-trav"}};
        r["details"] = {{"message", kClassHint}};
        line = "not in the supported class";
      } else {
        const CtSet ct = deriveCt(*t);
        const UnboundedVerdict v = unboundedVerdict(*t);
        if (const auto* bad = std::get_if<UnsafeAt>(&v)) {
          ++unsafeCount;
          r["verdict"] = {{"kind", "unsafe-at"},
                          {"size", bad->size},
                          {"accessIndex", bad->error.index},
                          {"iteration", bad->error.iteration},
                          {"ct", ct.sizes}};
          line = paintBad("unsafe at size " + std::to_string(bad->size)) + " (ct " +
                 formatCt(ct) + ")";
        } else {
          ++safe;
          r["verdict"] = {{"kind", "safe-all-sizes"}, {"ct", ct.sizes}};
          line = paintGood("safe for all sizes") + " (ct " + formatCt(ct) + ")";
        }
        r["details"] = {{"domainNote", ct.domainNote}};
      }
    } catch (const ParseError& e) {
      ++parseErrors;
      r["verdict"] = {{"kind", "parse-error"}};
      r["details"] = {{"message", e.what()}, {"line", e.line()}, {"column", e.column()}};
      std::ostringstream msg;
      msg << "parse error at " << e.line() << ":" << e.column() << ": " << e.what();
      line = paintBad(msg.str());
    }
    r["elapsedMs"] = fileWatch.elapsedMs();
    reports.push_back(std::move(r));
    if (!jsonFlag) std::cout << file << ": " << line << "\n";
  }

  if (jsonFlag) {
    json summary = reportSkeleton("corpus", dir);
    summary["reports"] = std::move(reports);
    summary["totals"] = {{"safe", safe},
                         {"unsafe", unsafeCount},
                         {"unrecognized", unrecognized},
                         {"parseErrors", parseErrors}};
    summary["elapsedMs"] = watch.elapsedMs();
    printJson(summary);
  } else {
    std::cout << "totals: safe " << safe << ", unsafe " << unsafeCount
              << ", unrecognized " << unrecognized << ", parse errors " << parseErrors
              << "\n";
  }
  return parseErrors > 0 ? 65 : 0;
}

std::optional<std::uint64_t> parseUnwind(const std::string& text) {
  if (text == "unlimited") return std::nullopt;
  try {
    std::size_t used = 0;
    const unsigned long long value = std::stoull(text, &used);
    if (used != text.size() || text.empty() || text[0] == '-') {
      throw std::invalid_argument(text);
    }
    return value;
  } catch (const std::exception&) {
    throw UsageError("--unwind expects a nonnegative integer or 'unlimited'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"memory-safety checking for array-traversal loops"};
  app.set_version_flag("--version", std::string(kTool) + " " + kVersion);
  app.require_subcommand(1);

  std::string path, inlineExpr, unwindText = "unlimited", smtPath, corpusDir;
  std::uint64_t sizeBound = 0;
  std::optional<std::uint64_t> atSize;
  bool jsonFlag = false;

  CLI::App* check = app.add_subcommand("check", "bounded check over sizes 0..N");
  check->add_option("path", path, "program file (*.trav)");
  check->add_option("--expr", inlineExpr, "inline program text instead of a file");
  check->add_option("--size-bound", sizeBound, "largest array size to check (inclusive)")
      ->required();
  check->add_option("--unwind", unwindText, "iterations per loop entry, or 'unlimited'");
  check->add_flag("--json", jsonFlag, "machine-readable report on stdout");

  CLI::App* ct = app.add_subcommand("ct", "completeness threshold and unbounded verdict");
  ct->add_option("path", path, "program file (*.trav)");
  ct->add_option("--expr", inlineExpr, "inline program text instead of a file");
  CLI::Option* oracleOpt =
      ct->add_option("--verify-oracle",
                     "re-check the threshold against brute force up to a horizon "
                     "(default 64, or CT_VERIFY_HORIZON)")
          ->expected(0, 1);
  ct->add_flag("--json", jsonFlag, "machine-readable report on stdout");

  CLI::App* vc = app.add_subcommand("vc", "print the memory-safety verification condition");
  vc->add_option("path", path, "program file (*.trav)");
  vc->add_option("--expr", inlineExpr, "inline program text instead of a file");
  vc->add_option("--smt", smtPath, "write an SMT-LIB2 query to this path");
  vc->add_option("--at-size", atSize, "evaluate (and pin the SMT query) at this size");

  CLI::App* falsify = app.add_subcommand(
      "falsify", "compare the bounded verdict with the threshold verdict");
  falsify->add_option("path", path, "program file (*.trav)");
  falsify->add_option("--expr", inlineExpr, "inline program text instead of a file");
  falsify->add_option("--size-bound", sizeBound, "size bound for the bounded check")
      ->required();

  CLI::App* corpus = app.add_subcommand("corpus", "ct verdicts for every *.trav in a directory");
  corpus->add_option("dir", corpusDir, "directory to sweep")->required();
  corpus->add_flag("--json", jsonFlag, "machine-readable report on stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 64;
  }

  try {
    if (check->parsed()) {
      if (sizeBound > kMaxSize) throw UsageError("--size-bound exceeds 2^32");
      const auto unwind = parseUnwind(unwindText);
      return cmdCheck(loadSource(path, inlineExpr), sizeBound, unwind, jsonFlag);
    }
    if (ct->parsed()) {
      std::optional<std::uint64_t> horizon;
      if (oracleOpt->count() > 0) {
        horizon = 64;
        if (const char* env = std::getenv("CT_VERIFY_HORIZON")) {
          try {
            horizon = std::stoull(env);
          } catch (const std::exception&) {
            throw UsageError("CT_VERIFY_HORIZON must be a nonnegative integer");
          }
        }
        if (!oracleOpt->results().empty() && !oracleOpt->results().front().empty()) {
          try {
            horizon = std::stoull(oracleOpt->results().front());
          } catch (const std::exception&) {
            throw UsageError("--verify-oracle expects a nonnegative integer horizon");
          }
        }
      }
      return cmdCt(loadSource(path, inlineExpr), horizon, jsonFlag);
    }
    if (vc->parsed()) {
      if (atSize && *atSize > kMaxSize) throw UsageError("--at-size exceeds 2^32");
      return cmdVc(loadSource(path, inlineExpr), smtPath, atSize);
    }
    if (falsify->parsed()) {
      if (sizeBound > kMaxSize) throw UsageError("--size-bound exceeds 2^32");
      return cmdFalsify(loadSource(path, inlineExpr), sizeBound);
    }
    if (corpus->parsed()) {
      return cmdCorpus(corpusDir, jsonFlag);
    }
  } catch (const UsageError& e) {
    std::cerr << kTool << ": " << e.what() << "\n";
    return 64;
  } catch (const std::invalid_argument& e) {
    std::cerr << kTool << ": " << e.what() << "\n";
    return 64;
  } catch (const std::exception& e) {
    std::cerr << kTool << ": internal error: " << e.what() << "\n";
    return 70;
  }
  return 0;
}
