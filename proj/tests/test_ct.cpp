#include <algorithm>
#include <map>

#include "doctest.h"
#include "support/trav_oracle.hpp"
#include "travcheck/bmc.hpp"
#include "travcheck/ct.hpp"
#include "travcheck/interp.hpp"
#include "travcheck/lang.hpp"
#include "travcheck/vcgen.hpp"

using namespace travcheck;

TEST_CASE("deriveCt: singletons, verified by the oracle before trusting") {
  struct Row {
    TravInstance t;
    std::uint64_t expected;
  };
  const Row rows[] = {
      {{0, 1, 0}, 1},
      {{0, 2, 2}, 2},
      {{-3, -1, 0}, 0},  // start+margin = -4, clamped to 0
  };
  for (const Row& row : rows) {
    const CtSet ct = deriveCt(row.t);
    REQUIRE(ct.sizes == std::vector<std::uint64_t>{row.expected});
    CHECK_FALSE(ct.domainNote.empty());
    CHECK(verifyCtOracle(row.t, ct, 64).ok);
  }
}

TEST_CASE("verifyCtOracle: spot checks") {
  const OracleReport whole = verifyCtOracle({0, 1, 0}, CtSet{{1}, ""}, 64);
  CHECK(whole.byCandidate);
  CHECK(whole.byBrute);
  CHECK(whole.ok);

  // size bound 1 is not a threshold for the reduced-range instance: the
  // candidate looks safe while brute force finds the size-2 error
  const OracleReport bogus = verifyCtOracle({0, 2, 2}, CtSet{{1}, ""}, 64);
  CHECK(bogus.byCandidate);
  CHECK_FALSE(bogus.byBrute);
  CHECK_FALSE(bogus.ok);

  const OracleReport right = verifyCtOracle({0, 2, 2}, CtSet{{2}, ""}, 64);
  CHECK_FALSE(right.byCandidate);
  CHECK_FALSE(right.byBrute);
  CHECK(right.ok);
}

TEST_CASE("verifyCtOracle: precondition checks") {
  CHECK_THROWS_AS(verifyCtOracle({0, 1, 0}, CtSet{{}, ""}, 64), std::invalid_argument);
  CHECK_THROWS_AS(verifyCtOracle({0, 1, 0}, CtSet{{70}, ""}, 64), std::invalid_argument);
  // horizon must reach past |start|+|margin|+|shift|+2
  CHECK_THROWS_AS(verifyCtOracle({4, 4, 4}, CtSet{{8}, ""}, 10), std::invalid_argument);
}

TEST_CASE("unboundedVerdict: spot checks") {
  const UnboundedVerdict safe = unboundedVerdict({0, 1, 0});
  const auto* ok = std::get_if<SafeForAllSizes>(&safe);
  REQUIRE(ok != nullptr);
  CHECK(ok->checkedSizes.sizes == std::vector<std::uint64_t>{1});

  const UnboundedVerdict reduced = unboundedVerdict({0, 2, 2});
  const auto* bad = std::get_if<UnsafeAt>(&reduced);
  REQUIRE(bad != nullptr);
  CHECK(bad->size == 2);
  CHECK(bad->error.index == 2);

  const UnboundedVerdict shifted = unboundedVerdict({0, 1, 2});
  const auto* bad2 = std::get_if<UnsafeAt>(&shifted);
  REQUIRE(bad2 != nullptr);
  CHECK(bad2->size == 1);
  CHECK(bad2->error.index == 2);
}

TEST_CASE("closedFormSafety: spot checks") {
  CHECK(closedFormSafety({0, 1, 0}));
  CHECK_FALSE(closedFormSafety({0, 1, 2}));
  CHECK_FALSE(closedFormSafety({0, 2, 2}));
}

TEST_CASE("CT correctness on the grid") {
  travoracle::forEachInstance(3, [](const TravInstance& t) {
    CAPTURE(t.start);
    CAPTURE(t.margin);
    CAPTURE(t.shift);
    const OracleReport report = verifyCtOracle(t, deriveCt(t), 64);
    CHECK(report.ok);
    // and safety settles at the claimed regime start
    CHECK(safetyConstantFrom(t, stableRegimeStart(t), 64));
  });
}

TEST_CASE("closed form, brute force and unbounded verdict coincide") {
  travoracle::forEachInstance(3, [](const TravInstance& t) {
    const bool brute = travoracle::safeUpTo(t, 64);
    CHECK(closedFormSafety(t) == brute);
    const UnboundedVerdict v = unboundedVerdict(t);
    CHECK(std::holds_alternative<SafeForAllSizes>(v) == brute);
    if (const auto* bad = std::get_if<UnsafeAt>(&v)) {
      // the reported error replays exactly
      const auto expected = travoracle::firstOutOfBounds(t, static_cast<std::int64_t>(bad->size));
      REQUIRE(expected.has_value());
      CHECK(bad->error.iteration == expected->iteration);
      CHECK(bad->error.index == expected->index);
      // and the threshold size is a member of the derived set
      const CtSet ct = deriveCt(t);
      CHECK(std::find(ct.sizes.begin(), ct.sizes.end(), bad->size) != ct.sizes.end());
    }
  });
}

TEST_CASE("the threshold also decides the VC") {
  travoracle::forEachInstance(3, [](const TravInstance& t) {
    const Formula vc = genMemsafeVc(t);
    bool atThreshold = true;
    for (std::uint64_t size : deriveCt(t).sizes) atThreshold &= evalVc(vc, size);
    bool everywhere = true;
    for (std::uint64_t size = 0; size <= 64 && everywhere; ++size) {
      everywhere = evalVc(vc, size);
    }
    CHECK(atThreshold == everywhere);
  });
}

TEST_CASE("minimality probe: one size less stops being a threshold somewhere") {
  // For every value n>=1 the derivation produces on the grid, some grid
  // instance with that threshold is refuted by the candidate {n-1}.
  std::map<std::uint64_t, bool> refuted;
  travoracle::forEachInstance(3, [&](const TravInstance& t) {
    const std::uint64_t n = deriveCt(t).sizes.front();
    if (n == 0) return;
    auto [it, inserted] = refuted.try_emplace(n, false);
    if (it->second) return;
    const OracleReport report = verifyCtOracle(t, CtSet{{n - 1}, ""}, 64);
    if (!report.ok) it->second = true;
  });
  REQUIRE_FALSE(refuted.empty());
  for (const auto& [n, found] : refuted) {
    CAPTURE(n);
    CHECK(found);
  }
}
