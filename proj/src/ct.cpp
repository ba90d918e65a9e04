#include "travcheck/ct.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace travcheck {

namespace {

const char* kDomainNote = "all natural array sizes s >= 0";

std::uint64_t sufficientBudget(const TravInstance& t, std::uint64_t size) {
  return size + static_cast<std::uint64_t>(std::llabs(t.start)) +
         static_cast<std::uint64_t>(std::llabs(t.margin)) + 2;
}

}  // namespace

CtSet deriveCt(const TravInstance& t) {
  return CtSet{{stableRegimeStart(t)}, kDomainNote};
}

std::uint64_t stableRegimeStart(const TravInstance& t) {
  const std::int64_t firstRun = t.start + t.margin;
  return firstRun > 0 ? static_cast<std::uint64_t>(firstRun) : 0;
}

bool safetyConstantFrom(const TravInstance& t, std::uint64_t from,
                        std::uint64_t horizon) {
  const Program p = canonicalProgram(t);
  if (from > horizon) return true;
  const bool first = safeAtSize(p, from);
  for (std::uint64_t s = from + 1; s <= horizon; ++s) {
    if (safeAtSize(p, s) != first) return false;
  }
  return true;
}

OracleReport verifyCtOracle(const TravInstance& t, const CtSet& candidate,
                            std::uint64_t horizon) {
  if (candidate.sizes.empty()) {
    throw std::invalid_argument("verifyCtOracle: candidate set is empty");
  }
  const std::uint64_t needed =
      static_cast<std::uint64_t>(std::llabs(t.start)) +
      static_cast<std::uint64_t>(std::llabs(t.margin)) +
      static_cast<std::uint64_t>(std::llabs(t.shift)) + 2;
  const std::uint64_t maxCandidate =
      *std::max_element(candidate.sizes.begin(), candidate.sizes.end());
  if (horizon < maxCandidate || horizon < needed) {
    throw std::invalid_argument(
        "verifyCtOracle: horizon too small to reach the constant regime");
  }

  const Program p = canonicalProgram(t);
  OracleReport report;
  report.candidate = candidate;
  report.horizon = horizon;
  report.byCandidate = std::all_of(candidate.sizes.begin(), candidate.sizes.end(),
                                   [&](std::uint64_t s) { return safeAtSize(p, s); });
  report.byBrute = true;
  for (std::uint64_t s = 0; s <= horizon; ++s) {
    if (!safeAtSize(p, s)) {
      report.byBrute = false;
      break;
    }
  }
  report.ok = report.byCandidate == report.byBrute;
  return report;
}

UnboundedVerdict unboundedVerdict(const TravInstance& t) {
  const CtSet ct = deriveCt(t);
  const Program p = canonicalProgram(t);
  for (std::uint64_t size : ct.sizes) {
    const ExecOutcome outcome = run(p, ExecConfig{size, sufficientBudget(t, size)});
    if (const auto* err = std::get_if<MemError>(&outcome)) {
      return UnsafeAt{size, *err};
    }
  }
  return SafeForAllSizes{ct};
}

bool closedFormSafety(const TravInstance& t) {
  return t.start + t.shift >= 0 && t.shift < t.margin;
}

}  // namespace travcheck
