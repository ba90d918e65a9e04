#include <random>

#include "doctest.h"
#include "support/trav_oracle.hpp"
#include "travcheck/bmc.hpp"
#include "travcheck/interp.hpp"
#include "travcheck/lang.hpp"

using namespace travcheck;

namespace {

BoundedVerdict sweep(const TravInstance& t, std::uint64_t sizeBound,
                     std::optional<std::uint64_t> unwind = std::nullopt) {
  return checkBounded(canonicalProgram(t), BmcConfig{sizeBound, unwind});
}

}  // namespace

TEST_CASE("checkBounded: the three motivating instances at size bound 1") {
  // whole-array traversal: no error within bounds, and none exists
  const BoundedVerdict a = sweep({0, 1, 0}, 1);
  const auto* clean = std::get_if<NoErrorWithinBounds>(&a);
  REQUIRE(clean != nullptr);
  CHECK(clean->unwindingComplete);
  CHECK(clean->sizesChecked == std::vector<std::uint64_t>{0, 1});

  // shifted access: caught at size 1
  const BoundedVerdict b = sweep({0, 1, 2}, 1);
  const auto* ce = std::get_if<CounterExample>(&b);
  REQUIRE(ce != nullptr);
  CHECK(ce->size == 1);
  CHECK(ce->error.index == 2);
  CHECK(ce->error.iteration == 0);

  // shifted access with reduced range: silently clean within the bounds,
  // the false reassurance a bounded proof can give
  const BoundedVerdict c = sweep({0, 2, 2}, 1);
  REQUIRE(std::holds_alternative<NoErrorWithinBounds>(c));
  CHECK(std::get<NoErrorWithinBounds>(c).unwindingComplete);
}

TEST_CASE("checkBounded: raising the size bound exposes the reduced-range error") {
  const BoundedVerdict v = sweep({0, 2, 2}, 2);
  const auto* ce = std::get_if<CounterExample>(&v);
  REQUIRE(ce != nullptr);
  CHECK(ce->size == 2);
  CHECK(ce->error.index == 2);
}

TEST_CASE("checkBounded: zero unwinding observes nothing and says so") {
  const BoundedVerdict v = sweep({0, 1, 0}, 5, 0);
  const auto* clean = std::get_if<NoErrorWithinBounds>(&v);
  REQUIRE(clean != nullptr);
  CHECK_FALSE(clean->unwindingComplete);
  CHECK(clean->sizesChecked.size() == 6);
}

TEST_CASE("checkBounded: unwinding depth counts iterations per loop entry") {
  // The inner loop wants 4 iterations per entry; depth 2 truncates it but
  // keeps the first two accesses, which are in bounds once the outer loop
  // runs at all (size 2). A total-iteration reading of the depth would
  // abort instead.
  const Program p = parse("trav(a, s) { for i in [1 : s-1] do for j in [0 : 3] do !a[j] }");
  const BoundedVerdict v = checkBounded(p, BmcConfig{2, 2});
  const auto* clean = std::get_if<NoErrorWithinBounds>(&v);
  REQUIRE(clean != nullptr);
  CHECK_FALSE(clean->unwindingComplete);

  // Unlimited depth reaches j=2, out of bounds at size 2.
  const BoundedVerdict full = checkBounded(p, BmcConfig{2, std::nullopt});
  const auto* ce = std::get_if<CounterExample>(&full);
  REQUIRE(ce != nullptr);
  CHECK(ce->size == 2);
  CHECK(ce->error.index == 2);
}

TEST_CASE("replay: counterexamples re-execute exactly") {
  const TravInstance shifted{0, 1, 2};
  const BoundedVerdict v = sweep(shifted, 1);
  REQUIRE(std::holds_alternative<CounterExample>(v));
  CHECK(replay(canonicalProgram(shifted), v));

  const TravInstance reduced{0, 2, 2};
  const BoundedVerdict w = sweep(reduced, 2);
  REQUIRE(std::holds_alternative<CounterExample>(w));
  CHECK(replay(canonicalProgram(reduced), w));
}

TEST_CASE("replay: rejects verdicts without a counterexample") {
  const BoundedVerdict v = sweep({0, 1, 0}, 1);
  CHECK_THROWS_AS(replay(canonicalProgram({0, 1, 0}), v), std::invalid_argument);
}

TEST_CASE("soundness: every counterexample in the grid replays") {
  travoracle::forEachInstance(3, [](const TravInstance& t) {
    const Program p = canonicalProgram(t);
    const BoundedVerdict v = checkBounded(p, BmcConfig{10, std::nullopt});
    if (std::holds_alternative<CounterExample>(v)) {
      CHECK(replay(p, v));
    }
  });
}

TEST_CASE("bound monotonicity and agreement with concrete execution") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::int64_t> constant(-5, 5);
  std::uniform_int_distribution<std::uint64_t> bound(0, 12);
  for (int trial = 0; trial < 200; ++trial) {
    const TravInstance t{constant(rng), constant(rng), constant(rng)};
    const std::uint64_t sizeBound = bound(rng);
    const Program p = canonicalProgram(t);
    const BoundedVerdict v = checkBounded(p, BmcConfig{sizeBound, std::nullopt});

    bool allSafe = true;
    std::optional<std::uint64_t> firstBad;
    for (std::uint64_t n = 0; n <= sizeBound; ++n) {
      if (!safeAtSize(p, n)) {
        allSafe = false;
        firstBad = n;
        break;
      }
    }

    // exact agreement with the interpreter sweep
    CHECK(std::holds_alternative<NoErrorWithinBounds>(v) == allSafe);
    if (const auto* ce = std::get_if<CounterExample>(&v)) {
      REQUIRE(firstBad.has_value());
      CHECK(ce->size == *firstBad);  // smallest failing size first
    }

    // no error at this bound means no error at every smaller bound
    if (allSafe && sizeBound > 0) {
      const BoundedVerdict smaller =
          checkBounded(p, BmcConfig{sizeBound - 1, std::nullopt});
      CHECK(std::holds_alternative<NoErrorWithinBounds>(smaller));
    }
  }
}
