// interp.hpp -- concrete execution of a Program at one array size.
//
// The heap is modeled by its size alone: programs in this language only
// read and discard the value, so `!a[e]` is a bounds check of e against
// [0, size). Execution stops at the first out-of-bounds access. All
// functions here are pure; concurrent runs need no coordination.

#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "travcheck/lang.hpp"

namespace travcheck {

struct ExecConfig {
  std::uint64_t size = 0;
  std::uint64_t stepBudget = 1;  // must be >= 1; total loop iterations allowed
};

/// One recorded array read. `iteration` is the zero-based ordinal of the
/// most recently started loop iteration, in execution order across all
/// loops; a read outside any loop carries iteration -1.
struct Access {
  std::int64_t iteration = 0;
  std::int64_t index = 0;

  friend bool operator==(const Access&, const Access&) = default;
};

/// Every access stayed inside [0, size).
struct SafeRun {
  std::uint64_t iterations = 0;
  std::vector<Access> accesses;  // in execution order
};

/// First out-of-bounds read, with the in-bounds trace that preceded it.
struct MemError {
  std::int64_t iteration = 0;
  std::int64_t index = 0;
  std::uint64_t size = 0;
  std::vector<Access> priorAccesses;
};

/// The step budget ran out; a configuration problem, never a verdict.
struct BudgetExhausted {
  std::uint64_t iterations = 0;
};

using ExecOutcome = std::variant<SafeRun, MemError, BudgetExhausted>;

struct RunLimits {
  /// Abort the whole run with BudgetExhausted when a further iteration
  /// would exceed this count. nullopt: unlimited (every program here
  /// terminates, since loop ranges are finite).
  std::optional<std::uint64_t> totalIterations;
  /// Stop each loop entry after this many iterations and continue after
  /// the loop, reporting truncated=true. nullopt: loops run to completion.
  std::optional<std::uint64_t> unwindPerEntry;
};

struct BoundedRun {
  ExecOutcome outcome;
  bool truncated = false;  // true iff some loop entry hit unwindPerEntry early
};

/// Core executor; deterministic.
BoundedRun runBounded(const Program& p, std::uint64_t size, const RunLimits& limits);

/// Runs p at cfg.size with a total iteration budget of cfg.stepBudget.
/// Throws std::invalid_argument when cfg.stepBudget == 0.
ExecOutcome run(const Program& p, const ExecConfig& cfg);

/// True iff run completes safely at this size. The step budget defaults to
/// size + |start| + |margin| + 2 for recognized traversal instances (always
/// sufficient) and is unlimited otherwise. Throws std::logic_error on
/// BudgetExhausted, which is unreachable for those defaults.
bool safeAtSize(const Program& p, std::uint64_t size);

}  // namespace travcheck
