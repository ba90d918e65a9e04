#include "travcheck/bmc.hpp"

#include <stdexcept>

namespace travcheck {

BoundedVerdict checkBounded(const Program& p, const BmcConfig& cfg) {
  NoErrorWithinBounds clean;
  for (std::uint64_t size = 0; size <= cfg.sizeBound; ++size) {
    RunLimits limits;
    limits.unwindPerEntry = cfg.unwindDepth;
    const BoundedRun r = runBounded(p, size, limits);
    if (const auto* err = std::get_if<MemError>(&r.outcome)) {
      return CounterExample{size, *err};
    }
    if (r.truncated) clean.unwindingComplete = false;
    clean.sizesChecked.push_back(size);
  }
  return clean;
}

bool replay(const Program& p, const BoundedVerdict& v) {
  const auto* ce = std::get_if<CounterExample>(&v);
  if (ce == nullptr) {
    throw std::invalid_argument("replay: verdict is not a counterexample");
  }
  const BoundedRun r = runBounded(p, ce->size, RunLimits{});
  const auto* err = std::get_if<MemError>(&r.outcome);
  return err != nullptr && err->iteration == ce->error.iteration &&
         err->index == ce->error.index && err->size == ce->error.size;
}

}  // namespace travcheck
