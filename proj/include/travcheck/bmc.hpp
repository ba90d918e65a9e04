// bmc.hpp -- bounded model checking by size sweep plus loop unwinding.
//
// Checks all array sizes 0..sizeBound in ascending order, executing at
// most unwindDepth iterations per loop entry (all of them when the depth
// is unlimited). Counterexamples are concrete runs, so every reported one
// is a real out-of-bounds read; the absence of counterexamples is only a
// statement about the checked bounds.

#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "travcheck/interp.hpp"
#include "travcheck/lang.hpp"

namespace travcheck {

struct BmcConfig {
  std::uint64_t sizeBound = 0;                 // inclusive
  std::optional<std::uint64_t> unwindDepth;    // iterations per loop entry; nullopt = unlimited
};

struct NoErrorWithinBounds {
  std::vector<std::uint64_t> sizesChecked;
  /// false iff some checked size hit the depth limit before its loops
  /// finished; such a verdict is never a safety proof.
  bool unwindingComplete = true;
};

struct CounterExample {
  std::uint64_t size = 0;
  MemError error;
};

using BoundedVerdict = std::variant<NoErrorWithinBounds, CounterExample>;

/// Sweeps sizes 0..cfg.sizeBound ascending and returns the first
/// counterexample (smallest size, earliest iteration), else
/// NoErrorWithinBounds.
BoundedVerdict checkBounded(const Program& p, const BmcConfig& cfg);

/// Soundness audit: re-executes a CounterExample and confirms the recorded
/// iteration, access index and size. Throws std::invalid_argument when v
/// is not a CounterExample. A false return signals a checker bug.
bool replay(const Program& p, const BoundedVerdict& v);

}  // namespace travcheck
