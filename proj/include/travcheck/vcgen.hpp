// vcgen.hpp -- memory-safety verification conditions over the array size.
//
// For a recognized traversal instance the VC is the quantified
// linear-integer-arithmetic statement "every executed access is in
// bounds":
//
//   forall i in [start, s-margin]. 0 <= i+shift /\ i+shift < s
//
// with s the free size variable. The quantifier is range-guarded over
// exactly the executed iterations, so the VC neither forbids nor permits
// anything the program does not do at that size; evalVc at a concrete
// size must agree with concrete execution. Formulas are immutable values.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "travcheck/lang.hpp"

namespace travcheck {

/// sizeCoef*s + indexCoef*i + constant
struct LinearTerm {
  std::int64_t sizeCoef = 0;
  std::int64_t indexCoef = 0;
  std::int64_t constant = 0;

  friend bool operator==(const LinearTerm&, const LinearTerm&) = default;
};

enum class Rel { Le, Lt, Eq, Ge, Gt };

struct LinearAtom {
  LinearTerm lhs;
  Rel rel = Rel::Le;
  LinearTerm rhs;
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct FAtom {
  LinearAtom atom;
};
struct FAnd {
  std::vector<FormulaPtr> parts;
};
struct FOr {
  std::vector<FormulaPtr> parts;
};
struct FImplies {
  FormulaPtr premise;
  FormulaPtr conclusion;
};
/// Inclusive quantifier over the index variable i; the bounds may mention
/// only s. Mirrors the loop: an empty range holds vacuously.
struct FForallIndex {
  LinearTerm lower;
  LinearTerm upper;
  FormulaPtr body;
};
struct FTrue {};
struct FFalse {};

struct Formula {
  std::variant<FAtom, FAnd, FOr, FImplies, FForallIndex, FTrue, FFalse> node;
};

/// The memory-safety VC of a traversal instance (shape above).
Formula genMemsafeVc(const TravInstance& t);

/// Decides the VC at a concrete size by substituting s and enumerating the
/// (now finite, inclusive) quantifier range. The trusted decision path.
bool evalVc(const Formula& f, std::uint64_t size);

/// Interval shortcut: same as evalVc but checks only the two endpoint
/// values of each quantifier range. Sound for the VCs built by
/// genMemsafeVc, whose atoms are monotone in i; kept separate from the
/// trusted path and equated with it by tests.
bool evalVcEndpoints(const Formula& f, std::uint64_t size);

/// Canonical ASCII form, e.g.
///   forall i in [0, s-2]. 0 <= i+2 /\ i+2 < s
std::string renderFormula(const Formula& f);

/// SMT-LIB2 export, logic LIA, symbols `s` and `i`. Asserts the NEGATION
/// of the VC: `sat` means a counterexample size/index exists, `unsat`
/// means the VC is valid. atSize pins `(assert (= s N))`; otherwise the
/// query is universal over `(assert (>= s 0))`. Text out only; no solver
/// is invoked here.
std::string exportSmt(const Formula& f, std::optional<std::uint64_t> atSize);

}  // namespace travcheck
