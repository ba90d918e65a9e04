// lang.hpp -- syntax of the array-traversal WHILE language.
//
// Grammar (ASCII, whitespace-insensitive between tokens):
//
//   program := "trav" "(" ident "," ident ")" "{" stmt "}"
//   stmt    := "for" ident "in" "[" expr ":" expr "]" "do" stmt
//            | "!" ident "[" expr "]"
//   expr    := term (("+"|"-") term)*
//   term    := intlit | ident
//   intlit  := "-"? digit+
//
// The first program parameter is the array, the second its size. "for"
// ranges are inclusive on both bounds. "!a[e]" reads the array at index e.
// Identifiers start with a letter and continue with letters, digits or
// underscores; "trav", "for", "in" and "do" are reserved.
//
// Parsing also enforces well-formedness: the two parameters are distinct,
// every variable in an index or bound expression is the size parameter or
// an enclosing loop variable, only the array parameter may be dereferenced,
// loop variables never shadow an existing name, and every integer literal
// fits |c| <= 2^31-1 so that index arithmetic cannot overflow for any
// supported array size.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace travcheck {

/// Largest magnitude allowed for an integer literal (2^31 - 1).
inline constexpr std::int64_t kMaxConstMagnitude = 2147483647;

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct IntConst {
  std::int64_t value = 0;
};

struct VarRef {
  std::string name;
};

struct Add {
  ExprPtr left;
  ExprPtr right;
};

struct Sub {
  ExprPtr left;
  ExprPtr right;
};

/// Integer expression. Immutable after construction; nodes are shared
/// freely between values and across threads.
struct Expr {
  std::variant<IntConst, VarRef, Add, Sub> node;
};

ExprPtr makeInt(std::int64_t value);
ExprPtr makeVar(std::string name);
ExprPtr makeAdd(ExprPtr left, ExprPtr right);
ExprPtr makeSub(ExprPtr left, ExprPtr right);

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

/// Bounds-checked array read `!array[index]`.
struct HeapRead {
  std::string array;
  ExprPtr index;
};

/// `for loopVar in [lo : hi] do body` -- iterates lo, lo+1, ..., hi;
/// zero iterations when lo > hi.
struct ForRange {
  std::string loopVar;
  ExprPtr lo;
  ExprPtr hi;
  std::vector<StmtPtr> body;
};

struct Stmt {
  std::variant<HeapRead, ForRange> node;
};

StmtPtr makeHeapRead(std::string array, ExprPtr index);
StmtPtr makeForRange(std::string loopVar, ExprPtr lo, ExprPtr hi,
                     std::vector<StmtPtr> body);

/// A whole program: `trav(arrayParam, sizeParam) { body }`.
struct Program {
  std::string arrayParam;
  std::string sizeParam;
  std::vector<StmtPtr> body;
};

// Deep structural equality (identifier names included).
bool operator==(const Expr& a, const Expr& b);
bool operator==(const Stmt& a, const Stmt& b);
bool operator==(const Program& a, const Program& b);

/// One member of the recognized traversal class:
///
///   for i in [start : s-margin] do !a[i+shift]
///
/// where `start`, `margin` and `shift` are integer constants and s is the
/// array size.
struct TravInstance {
  std::int64_t start = 0;
  std::int64_t margin = 0;
  std::int64_t shift = 0;

  friend bool operator==(const TravInstance&, const TravInstance&) = default;
};

/// Parse failure: position plus the token set the parser would have
/// accepted at that point. what() carries the formatted message.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column,
             std::vector<std::string> expected);

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept {
    return expected_;
  }

 private:
  int line_;
  int column_;
  std::vector<std::string> expected_;
};

/// Parses source text into a well-formed Program. Throws ParseError on any
/// deviation from the grammar or the well-formedness rules; no recovery.
Program parse(std::string_view source);

/// Emits the canonical concrete syntax, e.g.
///   trav(a, s) { for i in [0 : s-1] do !a[i+0] }
/// parse(render(p)) is structurally equal to p for every parseable p.
std::string render(const Program& p);

/// Maps a program onto the traversal class: accepts exactly a
/// single-statement body `for v in [C : size-C'] do !arr[v+C'']`, up to
/// variable renaming and sign normalization of the three constant
/// positions (`v-c` counts as `v+(-c)`, bare `size`/`v` as margin/shift 0).
/// Returns nullopt for everything else; that is a value, not a failure.
std::optional<TravInstance> recognizeTrav(const Program& p);

/// Canonical program for an instance, with parameters named `a`, `s` and
/// loop variable `i`. recognizeTrav(canonicalProgram(t)) == t.
Program canonicalProgram(const TravInstance& t);

}  // namespace travcheck
