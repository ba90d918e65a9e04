// Acceptance suite: one line per criterion, nonzero exit if any fails.
//
//   1  scenario matrix: bounded verdicts at S=1 and threshold verdicts (< 1 s)
//   2  threshold oracle equivalence on the 9x9x9 constant grid (< 60 s)
//   3  VC precision: evalVc == concrete execution on the grid, sizes 0..64
//   4  closed-form safety == brute-force universal verdict on the grid
//   5  counterexample replay and size-bound monotonicity (randomized, seeded)
//   6  falsify subcommand demonstrates the missed size and exits accordingly
//   7  render -> parse -> recognize is the identity on the grid
//   8  SMT export vs. an external LIA solver (skipped when none is installed)

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "support/process.hpp"
#include "support/solver.hpp"
#include "support/trav_oracle.hpp"
#include "travcheck/bmc.hpp"
#include "travcheck/ct.hpp"
#include "travcheck/interp.hpp"
#include "travcheck/lang.hpp"
#include "travcheck/vcgen.hpp"

using namespace travcheck;

namespace {

int failures = 0;

using Clock = std::chrono::steady_clock;

double secondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(int number, const std::string& name, bool pass, double seconds,
            const std::string& note = "") {
  std::printf("%s  criterion %d: %s (%.2fs)%s%s\n", pass ? "PASS" : "FAIL", number,
              name.c_str(), seconds, note.empty() ? "" : " -- ", note.c_str());
  if (!pass) ++failures;
}

void reportSkip(int number, const std::string& name, const std::string& warning) {
  std::printf("SKIP  criterion %d: %s -- warning: %s\n", number, name.c_str(),
              warning.c_str());
}

// ---------------------------------------------------------------------------

bool isCounterExampleAt(const BoundedVerdict& v, std::uint64_t size,
                        std::int64_t index) {
  const auto* ce = std::get_if<CounterExample>(&v);
  return ce != nullptr && ce->size == size && ce->error.index == index;
}

bool isUnsafeAt(const UnboundedVerdict& v, std::uint64_t size) {
  const auto* bad = std::get_if<UnsafeAt>(&v);
  return bad != nullptr && bad->size == size;
}

void criterion1() {
  const auto start = Clock::now();
  const TravInstance whole{0, 1, 0}, shifted{0, 1, 2}, reduced{0, 2, 2};
  bool ok = true;

  const BmcConfig s1{1, std::nullopt};
  ok &= std::holds_alternative<NoErrorWithinBounds>(
      checkBounded(canonicalProgram(whole), s1));
  ok &= isCounterExampleAt(checkBounded(canonicalProgram(shifted), s1), 1, 2);
  ok &= std::holds_alternative<NoErrorWithinBounds>(
      checkBounded(canonicalProgram(reduced), s1));

  ok &= std::holds_alternative<SafeForAllSizes>(unboundedVerdict(whole));
  ok &= isUnsafeAt(unboundedVerdict(shifted), 1);
  ok &= isUnsafeAt(unboundedVerdict(reduced), 2);

  const double elapsed = secondsSince(start);
  ok &= elapsed < 1.0;
  report(1, "scenario matrix, bounded at S=1 and threshold verdicts", ok, elapsed);
}

void criterion2() {
  const auto start = Clock::now();
  bool ok = true;
  travoracle::forEachInstance(4, [&](const TravInstance& t) {
    if (!verifyCtOracle(t, deriveCt(t), 64).ok) ok = false;
    if (!safetyConstantFrom(t, stableRegimeStart(t), 64)) ok = false;
  });
  const double elapsed = secondsSince(start);
  ok &= elapsed < 60.0;
  report(2, "threshold oracle equivalence, 729 instances, horizon 64", ok, elapsed);
}

void criterion3() {
  const auto start = Clock::now();
  std::uint64_t mismatches = 0;
  travoracle::forEachInstance(4, [&](const TravInstance& t) {
    const Formula vc = genMemsafeVc(t);
    const Program p = canonicalProgram(t);
    for (std::uint64_t size = 0; size <= 64; ++size) {
      if (evalVc(vc, size) != safeAtSize(p, size)) ++mismatches;
    }
  });
  report(3, "VC precision, evalVc == execution on 729 x 65 points",
         mismatches == 0, secondsSince(start));
}

void criterion4() {
  const auto start = Clock::now();
  std::uint64_t mismatches = 0;
  travoracle::forEachInstance(4, [&](const TravInstance& t) {
    bool brute = true;
    const Program p = canonicalProgram(t);
    for (std::uint64_t size = 0; size <= 64 && brute; ++size) {
      brute = safeAtSize(p, size);
    }
    if (closedFormSafety(t) != brute) ++mismatches;
  });
  report(4, "closed-form safety == brute-force universal verdict", mismatches == 0,
         secondsSince(start));
}

void criterion5() {
  const auto start = Clock::now();
  bool ok = true;
  std::uint64_t counterExamples = 0;

  // every counterexample the grid sweep produces must replay
  travoracle::forEachInstance(4, [&](const TravInstance& t) {
    const Program p = canonicalProgram(t);
    const BoundedVerdict v = checkBounded(p, BmcConfig{16, std::nullopt});
    if (std::holds_alternative<CounterExample>(v)) {
      ++counterExamples;
      if (!replay(p, v)) ok = false;
    }
  });
  ok &= counterExamples > 0;

  // monotonicity on 100 random (instance, bound) pairs
  std::mt19937 rng(20240810);
  std::uniform_int_distribution<std::int64_t> constant(-4, 4);
  std::uniform_int_distribution<std::uint64_t> bound(0, 16);
  for (int trial = 0; trial < 100; ++trial) {
    const TravInstance t{constant(rng), constant(rng), constant(rng)};
    const std::uint64_t sizeBound = bound(rng);
    const Program p = canonicalProgram(t);
    if (!std::holds_alternative<NoErrorWithinBounds>(
            checkBounded(p, BmcConfig{sizeBound, std::nullopt}))) {
      continue;
    }
    for (std::uint64_t smaller = 0; smaller < sizeBound; ++smaller) {
      if (!std::holds_alternative<NoErrorWithinBounds>(
              checkBounded(p, BmcConfig{smaller, std::nullopt}))) {
        ok = false;
      }
    }
  }
  report(5, "counterexample replay and bound monotonicity", ok, secondsSince(start));
}

void criterion6(const std::string& binary) {
  const auto start = Clock::now();
  testsupport::TempDir dir;
  const std::string whole =
      dir.writeFile("whole.trav", render(canonicalProgram({0, 1, 0})));
  const std::string shifted =
      dir.writeFile("shifted.trav", render(canonicalProgram({0, 1, 2})));
  const std::string reduced =
      dir.writeFile("reduced.trav", render(canonicalProgram({0, 2, 2})));

  bool ok = true;
  const auto pitfall =
      testsupport::runProcess(binary, "falsify " + reduced + " --size-bound 1");
  ok &= pitfall.exitCode == 1;
  ok &= pitfall.out.find("size 2") != std::string::npos;
  ok &= testsupport::runProcess(binary, "falsify " + whole + " --size-bound 1").exitCode == 0;
  ok &= testsupport::runProcess(binary, "falsify " + shifted + " --size-bound 1").exitCode == 0;
  report(6, "falsify demonstrates the missed size via the CLI", ok, secondsSince(start));
}

void criterion7() {
  const auto start = Clock::now();
  bool ok = true;
  travoracle::forEachInstance(4, [&](const TravInstance& t) {
    const auto back = recognizeTrav(parse(render(canonicalProgram(t))));
    if (!back || !(*back == t)) ok = false;
  });
  report(7, "render -> parse -> recognize identity on the grid", ok, secondsSince(start));
}

void criterion8() {
  const std::string name = "SMT export agrees with an external LIA solver";
  const auto solver = testsupport::findLiaSolver();
  if (!solver) {
    reportSkip(8, name, "no LIA solver (z3/cvc5/cvc4) on PATH");
    return;
  }
  const auto start = Clock::now();
  // 20 deterministically sampled instances, universal queries
  std::mt19937 rng(8);
  std::uniform_int_distribution<std::int64_t> constant(-4, 4);
  bool ok = true;
  for (int trial = 0; trial < 20; ++trial) {
    const TravInstance t{constant(rng), constant(rng), constant(rng)};
    const std::string verdict =
        testsupport::solve(*solver, exportSmt(genMemsafeVc(t), std::nullopt));
    const std::string expected = closedFormSafety(t) ? "unsat" : "sat";
    if (verdict != expected) ok = false;
  }
  report(8, name + " (" + *solver + ")", ok, secondsSince(start));
}

}  // namespace

int main(int argc, char** argv) {
  const std::string binary = argc > 1 ? argv[1] : TRAVCHECK_BIN;
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6(binary);
  criterion7();
  criterion8();
  if (failures > 0) {
    std::printf("acceptance: %d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("acceptance: all criteria passed\n");
  return 0;
}
