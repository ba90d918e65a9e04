// ct.hpp -- completeness thresholds for the traversal class.
//
// A completeness threshold for an instance is a finite set of sizes whose
// safety decides safety for every natural size: running the loop at the
// sizes in the set is as informative as running it at all sizes. For
//
//   for i in [start : s-margin] do !a[i+shift]
//
// the per-size verdict is constant once s >= max(start+margin, 0): from
// that point on the loop is nonempty and its boundary accesses start+shift
// and s-margin+shift move in lockstep with s, so the single size
// max(start+margin, 0) suffices. Candidates are never trusted bare; the
// brute-force oracle checks them against a size sweep.

#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "travcheck/interp.hpp"
#include "travcheck/lang.hpp"

namespace travcheck {

/// Finite ascending set of sizes claimed to decide all of the domain named
/// in domainNote. Nonempty for every recognized instance.
struct CtSet {
  std::vector<std::uint64_t> sizes;
  std::string domainNote;
};

/// Every size in the threshold ran safely, which extends to all sizes.
struct SafeForAllSizes {
  CtSet checkedSizes;
};

/// A threshold size failed; the error is a concrete replayable run.
struct UnsafeAt {
  std::uint64_t size = 0;
  MemError error;
};

using UnboundedVerdict = std::variant<SafeForAllSizes, UnsafeAt>;

/// Comparison of a candidate threshold against brute force over
/// [0, horizon]. ok demands equivalence -- candidate-safe iff all-safe --
/// which is stronger than the threshold requirement alone and is what
/// makes UnsafeAt verdicts sound.
struct OracleReport {
  CtSet candidate;
  std::uint64_t horizon = 0;
  bool byCandidate = false;  // every candidate size safe
  bool byBrute = false;      // every size in [0, horizon] safe
  bool ok = false;           // byCandidate == byBrute
};

/// The derived threshold: the singleton { max(start+margin, 0) }, the
/// first size at which the loop body runs.
CtSet deriveCt(const TravInstance& t);

/// First size at which the per-size verdict has become constant.
std::uint64_t stableRegimeStart(const TravInstance& t);

/// True iff safeAtSize is constant on [from, horizon].
bool safetyConstantFrom(const TravInstance& t, std::uint64_t from, std::uint64_t horizon);

/// Brute-force check of a candidate threshold. Requires
/// horizon >= max(candidate) and horizon >= |start|+|margin|+|shift|+2, so
/// the sweep reaches the constant regime; throws std::invalid_argument
/// otherwise. A non-ok report is the test-failure signal, not an error.
OracleReport verifyCtOracle(const TravInstance& t, const CtSet& candidate,
                            std::uint64_t horizon);

/// Runs every size in deriveCt(t); safe everywhere extends the verdict to
/// all sizes, otherwise reports the failing size with its concrete error.
UnboundedVerdict unboundedVerdict(const TravInstance& t);

/// Analytic cross-check: start+shift >= 0 and shift < margin. Equals the
/// universal brute-force verdict on the whole class.
bool closedFormSafety(const TravInstance& t);

}  // namespace travcheck
