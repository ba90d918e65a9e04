#include "travcheck/vcgen.hpp"

#include <sstream>
#include <stdexcept>

namespace travcheck {

namespace {

FormulaPtr wrap(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

LinearTerm constTerm(std::int64_t c) { return LinearTerm{0, 0, c}; }
LinearTerm sizeVar() { return LinearTerm{1, 0, 0}; }
LinearTerm indexPlus(std::int64_t c) { return LinearTerm{0, 1, c}; }

}  // namespace

Formula genMemsafeVc(const TravInstance& t) {
  FAnd inBounds;
  inBounds.parts.push_back(
      wrap(Formula{FAtom{LinearAtom{constTerm(0), Rel::Le, indexPlus(t.shift)}}}));
  inBounds.parts.push_back(
      wrap(Formula{FAtom{LinearAtom{indexPlus(t.shift), Rel::Lt, sizeVar()}}}));
  FForallIndex all;
  all.lower = constTerm(t.start);
  all.upper = LinearTerm{1, 0, -t.margin};  // s - margin
  all.body = wrap(Formula{std::move(inBounds)});
  return Formula{std::move(all)};
}

namespace {

std::int64_t evalTerm(const LinearTerm& t, std::int64_t s,
                      std::optional<std::int64_t> i) {
  if (t.indexCoef != 0 && !i) {
    throw std::logic_error("evalVc: index variable used outside its quantifier");
  }
  return t.sizeCoef * s + (i ? t.indexCoef * *i : 0) + t.constant;
}

bool evalRel(std::int64_t lhs, Rel rel, std::int64_t rhs) {
  switch (rel) {
    case Rel::Le: return lhs <= rhs;
    case Rel::Lt: return lhs < rhs;
    case Rel::Eq: return lhs == rhs;
    case Rel::Ge: return lhs >= rhs;
    case Rel::Gt: return lhs > rhs;
  }
  return false;
}

bool evalFormula(const Formula& f, std::int64_t s, std::optional<std::int64_t> i,
                 bool endpointsOnly) {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, FAtom>) {
          return evalRel(evalTerm(n.atom.lhs, s, i), n.atom.rel,
                         evalTerm(n.atom.rhs, s, i));
        } else if constexpr (std::is_same_v<T, FAnd>) {
          for (const auto& part : n.parts) {
            if (!evalFormula(*part, s, i, endpointsOnly)) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, FOr>) {
          for (const auto& part : n.parts) {
            if (evalFormula(*part, s, i, endpointsOnly)) return true;
          }
          return false;
        } else if constexpr (std::is_same_v<T, FImplies>) {
          return !evalFormula(*n.premise, s, i, endpointsOnly) ||
                 evalFormula(*n.conclusion, s, i, endpointsOnly);
        } else if constexpr (std::is_same_v<T, FForallIndex>) {
          if (i) {
            throw std::logic_error("evalVc: nested index quantifier");
          }
          const std::int64_t lo = evalTerm(n.lower, s, std::nullopt);
          const std::int64_t hi = evalTerm(n.upper, s, std::nullopt);
          if (endpointsOnly) {
            return lo > hi || (evalFormula(*n.body, s, lo, true) &&
                               evalFormula(*n.body, s, hi, true));
          }
          for (std::int64_t k = lo; k <= hi; ++k) {
            if (!evalFormula(*n.body, s, k, false)) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, FTrue>) {
          return true;
        } else {
          return false;
        }
      },
      f.node);
}

}  // namespace

bool evalVc(const Formula& f, std::uint64_t size) {
  return evalFormula(f, static_cast<std::int64_t>(size), std::nullopt, false);
}

bool evalVcEndpoints(const Formula& f, std::uint64_t size) {
  return evalFormula(f, static_cast<std::int64_t>(size), std::nullopt, true);
}

namespace {

// ASCII term: variables in the order s, i, then a signed constant; the
// constant is dropped when zero unless it is the whole term.
std::string termAscii(const LinearTerm& t) {
  std::ostringstream out;
  bool first = true;
  auto emitVar = [&](std::int64_t coef, const char* name) {
    if (coef == 0) return;
    if (first) {
      if (coef == -1) out << "-";
      else if (coef != 1) out << coef << "*";
    } else {
      out << (coef < 0 ? "-" : "+");
      if (coef != 1 && coef != -1) out << (coef < 0 ? -coef : coef) << "*";
    }
    out << name;
    first = false;
  };
  emitVar(t.sizeCoef, "s");
  emitVar(t.indexCoef, "i");
  if (first) {
    out << t.constant;
  } else if (t.constant != 0) {
    out << (t.constant < 0 ? "-" : "+") << (t.constant < 0 ? -t.constant : t.constant);
  }
  return out.str();
}

const char* relAscii(Rel rel) {
  switch (rel) {
    case Rel::Le: return "<=";
    case Rel::Lt: return "<";
    case Rel::Eq: return "=";
    case Rel::Ge: return ">=";
    case Rel::Gt: return ">";
  }
  return "?";
}

bool isComposite(const Formula& f) {
  return std::holds_alternative<FAnd>(f.node) || std::holds_alternative<FOr>(f.node) ||
         std::holds_alternative<FImplies>(f.node);
}

std::string formulaAscii(const Formula& f) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, FAtom>) {
          return termAscii(n.atom.lhs) + " " + relAscii(n.atom.rel) + " " +
                 termAscii(n.atom.rhs);
        } else if constexpr (std::is_same_v<T, FAnd> || std::is_same_v<T, FOr>) {
          const char* op = std::is_same_v<T, FAnd> ? " /\\ " : " \\/ ";
          std::string out;
          for (std::size_t k = 0; k < n.parts.size(); ++k) {
            if (k > 0) out += op;
            const bool parens = isComposite(*n.parts[k]);
            if (parens) out += "(";
            out += formulaAscii(*n.parts[k]);
            if (parens) out += ")";
          }
          return n.parts.empty() ? (std::is_same_v<T, FAnd> ? "true" : "false") : out;
        } else if constexpr (std::is_same_v<T, FImplies>) {
          const bool parens = isComposite(*n.premise);
          std::string out = parens ? "(" + formulaAscii(*n.premise) + ")"
                                   : formulaAscii(*n.premise);
          return out + " -> " + formulaAscii(*n.conclusion);
        } else if constexpr (std::is_same_v<T, FForallIndex>) {
          return "forall i in [" + termAscii(n.lower) + ", " + termAscii(n.upper) +
                 "]. " + formulaAscii(*n.body);
        } else if constexpr (std::is_same_v<T, FTrue>) {
          return "true";
        } else {
          return "false";
        }
      },
      f.node);
}

std::string intSmt(std::int64_t v) {
  if (v < 0) return "(- " + std::to_string(-v) + ")";
  return std::to_string(v);
}

std::string termSmt(const LinearTerm& t) {
  std::vector<std::string> parts;
  auto pushVar = [&](std::int64_t coef, const char* name) {
    if (coef == 0) return;
    if (coef == 1) parts.emplace_back(name);
    else parts.push_back("(* " + intSmt(coef) + " " + name + ")");
  };
  pushVar(t.sizeCoef, "s");
  pushVar(t.indexCoef, "i");
  if (parts.empty()) return intSmt(t.constant);
  std::string vars = parts.size() == 1 ? parts.front()
                                       : "(+ " + parts[0] + " " + parts[1] + ")";
  if (t.constant == 0) return vars;
  if (t.constant > 0) return "(+ " + vars + " " + std::to_string(t.constant) + ")";
  return "(- " + vars + " " + std::to_string(-t.constant) + ")";
}

const char* relSmt(Rel rel) {
  switch (rel) {
    case Rel::Le: return "<=";
    case Rel::Lt: return "<";
    case Rel::Eq: return "=";
    case Rel::Ge: return ">=";
    case Rel::Gt: return ">";
  }
  return "?";
}

std::string formulaSmt(const Formula& f) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, FAtom>) {
          return "(" + std::string(relSmt(n.atom.rel)) + " " + termSmt(n.atom.lhs) +
                 " " + termSmt(n.atom.rhs) + ")";
        } else if constexpr (std::is_same_v<T, FAnd> || std::is_same_v<T, FOr>) {
          if (n.parts.empty()) return std::is_same_v<T, FAnd> ? "true" : "false";
          if (n.parts.size() == 1) return formulaSmt(*n.parts.front());
          std::string out = std::is_same_v<T, FAnd> ? "(and" : "(or";
          for (const auto& part : n.parts) out += " " + formulaSmt(*part);
          return out + ")";
        } else if constexpr (std::is_same_v<T, FImplies>) {
          return "(=> " + formulaSmt(*n.premise) + " " + formulaSmt(*n.conclusion) + ")";
        } else if constexpr (std::is_same_v<T, FForallIndex>) {
          return "(forall ((i Int)) (=> (and (<= " + termSmt(n.lower) +
                 " i) (<= i " + termSmt(n.upper) + ")) " + formulaSmt(*n.body) + "))";
        } else if constexpr (std::is_same_v<T, FTrue>) {
          return "true";
        } else {
          return "false";
        }
      },
      f.node);
}

}  // namespace

std::string renderFormula(const Formula& f) { return formulaAscii(f); }

std::string exportSmt(const Formula& f, std::optional<std::uint64_t> atSize) {
  std::ostringstream out;
  out << "(set-logic LIA)\n";
  out << "(declare-const s Int)\n";
  if (atSize) {
    out << "(assert (= s " << *atSize << "))\n";
  } else {
    out << "(assert (>= s 0))\n";
  }
  out << "(assert (not " << formulaSmt(f) << "))\n";
  out << "(check-sat)\n";
  return out.str();
}

}  // namespace travcheck
