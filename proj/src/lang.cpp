#include "travcheck/lang.hpp"

#include <sstream>

namespace travcheck {

ExprPtr makeInt(std::int64_t value) {
  return std::make_shared<const Expr>(Expr{IntConst{value}});
}

ExprPtr makeVar(std::string name) {
  return std::make_shared<const Expr>(Expr{VarRef{std::move(name)}});
}

ExprPtr makeAdd(ExprPtr left, ExprPtr right) {
  return std::make_shared<const Expr>(Expr{Add{std::move(left), std::move(right)}});
}

ExprPtr makeSub(ExprPtr left, ExprPtr right) {
  return std::make_shared<const Expr>(Expr{Sub{std::move(left), std::move(right)}});
}

StmtPtr makeHeapRead(std::string array, ExprPtr index) {
  return std::make_shared<const Stmt>(Stmt{HeapRead{std::move(array), std::move(index)}});
}

StmtPtr makeForRange(std::string loopVar, ExprPtr lo, ExprPtr hi,
                     std::vector<StmtPtr> body) {
  return std::make_shared<const Stmt>(
      Stmt{ForRange{std::move(loopVar), std::move(lo), std::move(hi), std::move(body)}});
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&b](const auto& lhs) {
        using T = std::decay_t<decltype(lhs)>;
        const auto& rhs = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, IntConst>) {
          return lhs.value == rhs.value;
        } else if constexpr (std::is_same_v<T, VarRef>) {
          return lhs.name == rhs.name;
        } else {
          return *lhs.left == *rhs.left && *lhs.right == *rhs.right;
        }
      },
      a.node);
}

static bool bodiesEqual(const std::vector<StmtPtr>& a, const std::vector<StmtPtr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(*a[i] == *b[i])) return false;
  }
  return true;
}

bool operator==(const Stmt& a, const Stmt& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* ra = std::get_if<HeapRead>(&a.node)) {
    const auto& rb = std::get<HeapRead>(b.node);
    return ra->array == rb.array && *ra->index == *rb.index;
  }
  const auto& fa = std::get<ForRange>(a.node);
  const auto& fb = std::get<ForRange>(b.node);
  return fa.loopVar == fb.loopVar && *fa.lo == *fb.lo && *fa.hi == *fb.hi &&
         bodiesEqual(fa.body, fb.body);
}

bool operator==(const Program& a, const Program& b) {
  return a.arrayParam == b.arrayParam && a.sizeParam == b.sizeParam &&
         bodiesEqual(a.body, b.body);
}

namespace {

bool isAtom(const Expr& e) {
  return std::holds_alternative<IntConst>(e.node) || std::holds_alternative<VarRef>(e.node);
}

void renderExpr(const Expr& e, std::ostringstream& out) {
  std::visit(
      [&out](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, IntConst>) {
          out << n.value;
        } else if constexpr (std::is_same_v<T, VarRef>) {
          out << n.name;
        } else {
          // The grammar has no parentheses, so only left-leaning chains
          // whose right operands are atoms have a concrete form.
          if (!isAtom(*n.right)) {
            throw std::invalid_argument(
                "render: expression is not representable in the grammar");
          }
          renderExpr(*n.left, out);
          out << (std::is_same_v<T, Add> ? "+" : "-");
          renderExpr(*n.right, out);
        }
      },
      e.node);
}

void renderStmt(const Stmt& s, std::ostringstream& out) {
  if (const auto* read = std::get_if<HeapRead>(&s.node)) {
    out << "!" << read->array << "[";
    renderExpr(*read->index, out);
    out << "]";
    return;
  }
  const auto& loop = std::get<ForRange>(s.node);
  out << "for " << loop.loopVar << " in [";
  renderExpr(*loop.lo, out);
  out << " : ";
  renderExpr(*loop.hi, out);
  out << "] do ";
  if (loop.body.size() != 1) {
    throw std::invalid_argument("render: loop body must be a single statement");
  }
  renderStmt(*loop.body.front(), out);
}

}  // namespace

std::string render(const Program& p) {
  if (p.body.size() != 1) {
    throw std::invalid_argument("render: program body must be a single statement");
  }
  std::ostringstream out;
  out << "trav(" << p.arrayParam << ", " << p.sizeParam << ") { ";
  renderStmt(*p.body.front(), out);
  out << " }";
  return out.str();
}

namespace {

// Matches `v + c` / `v - c` / bare `v` against a required variable name and
// yields the signed constant, with `v-c` normalized to `v+(-c)`.
std::optional<std::int64_t> matchVarPlusConst(const Expr& e, const std::string& var) {
  if (const auto* v = std::get_if<VarRef>(&e.node)) {
    return v->name == var ? std::optional<std::int64_t>(0) : std::nullopt;
  }
  const Expr* lhs = nullptr;
  const Expr* rhs = nullptr;
  bool negate = false;
  if (const auto* add = std::get_if<Add>(&e.node)) {
    lhs = add->left.get();
    rhs = add->right.get();
  } else if (const auto* sub = std::get_if<Sub>(&e.node)) {
    lhs = sub->left.get();
    rhs = sub->right.get();
    negate = true;
  } else {
    return std::nullopt;
  }
  const auto* v = std::get_if<VarRef>(&lhs->node);
  const auto* c = std::get_if<IntConst>(&rhs->node);
  if (v == nullptr || c == nullptr || v->name != var) return std::nullopt;
  return negate ? -c->value : c->value;
}

}  // namespace

std::optional<TravInstance> recognizeTrav(const Program& p) {
  if (p.body.size() != 1) return std::nullopt;
  const auto* loop = std::get_if<ForRange>(&p.body.front()->node);
  if (loop == nullptr || loop->body.size() != 1) return std::nullopt;
  const auto* read = std::get_if<HeapRead>(&loop->body.front()->node);
  if (read == nullptr || read->array != p.arrayParam) return std::nullopt;

  const auto* lo = std::get_if<IntConst>(&loop->lo->node);
  if (lo == nullptr) return std::nullopt;

  // Upper bound is size-margin; `s - c` or the normalized `s + (-c)`.
  const auto sizeOffset = matchVarPlusConst(*loop->hi, p.sizeParam);
  if (!sizeOffset) return std::nullopt;

  const auto shift = matchVarPlusConst(*read->index, loop->loopVar);
  if (!shift) return std::nullopt;

  return TravInstance{lo->value, -*sizeOffset, *shift};
}

Program canonicalProgram(const TravInstance& t) {
  // Sign-normalized constant positions: the operator carries the sign and a
  // zero shift is kept explicit, so the access renders as i+0, i+2, i-1, ...
  ExprPtr hi = t.margin >= 0 ? makeSub(makeVar("s"), makeInt(t.margin))
                             : makeAdd(makeVar("s"), makeInt(-t.margin));
  ExprPtr index = t.shift >= 0 ? makeAdd(makeVar("i"), makeInt(t.shift))
                               : makeSub(makeVar("i"), makeInt(-t.shift));
  std::vector<StmtPtr> loopBody;
  loopBody.push_back(makeHeapRead("a", std::move(index)));
  std::vector<StmtPtr> body;
  body.push_back(makeForRange("i", makeInt(t.start), std::move(hi), std::move(loopBody)));
  return Program{"a", "s", std::move(body)};
}

}  // namespace travcheck
