#include "travcheck/interp.hpp"

#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace travcheck {

namespace {

// Environments are tiny (size parameter plus a handful of loop variables),
// so a flat vector beats a hash map.
struct Env {
  std::vector<std::pair<std::string, std::int64_t>> vars;

  std::int64_t lookup(const std::string& name) const {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
      if (it->first == name) return it->second;
    }
    throw std::logic_error("interp: unbound variable '" + name + "'");
  }
};

std::int64_t evalExpr(const Expr& e, const Env& env) {
  return std::visit(
      [&env](const auto& n) -> std::int64_t {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, IntConst>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, VarRef>) {
          return env.lookup(n.name);
        } else if constexpr (std::is_same_v<T, Add>) {
          return evalExpr(*n.left, env) + evalExpr(*n.right, env);
        } else {
          return evalExpr(*n.left, env) - evalExpr(*n.right, env);
        }
      },
      e.node);
}

struct Machine {
  std::int64_t size;
  RunLimits limits;
  std::uint64_t iterationsStarted = 0;
  std::uint64_t iterationsDone = 0;
  std::vector<Access> trace;
  bool truncated = false;

  // Outcome of one statement: nullopt = keep going.
  std::optional<ExecOutcome> execStmt(const Stmt& s, Env& env) {
    if (const auto* read = std::get_if<HeapRead>(&s.node)) {
      const std::int64_t index = evalExpr(*read->index, env);
      const std::int64_t iter = static_cast<std::int64_t>(iterationsStarted) - 1;
      if (index < 0 || index >= size) {
        return ExecOutcome{MemError{iter, index, static_cast<std::uint64_t>(size), trace}};
      }
      trace.push_back(Access{iter, index});
      return std::nullopt;
    }

    const auto& loop = std::get<ForRange>(s.node);
    const std::int64_t lo = evalExpr(*loop.lo, env);
    const std::int64_t hi = evalExpr(*loop.hi, env);
    std::uint64_t thisEntry = 0;
    for (std::int64_t i = lo; i <= hi; ++i) {
      if (limits.unwindPerEntry && thisEntry == *limits.unwindPerEntry) {
        truncated = true;
        break;
      }
      if (limits.totalIterations && iterationsStarted == *limits.totalIterations) {
        return ExecOutcome{BudgetExhausted{iterationsStarted}};
      }
      ++iterationsStarted;
      ++thisEntry;
      env.vars.emplace_back(loop.loopVar, i);
      for (const StmtPtr& stmt : loop.body) {
        if (auto outcome = execStmt(*stmt, env)) {
          env.vars.pop_back();
          return outcome;
        }
      }
      env.vars.pop_back();
      ++iterationsDone;
    }
    return std::nullopt;
  }
};

}  // namespace

BoundedRun runBounded(const Program& p, std::uint64_t size, const RunLimits& limits) {
  Machine m;
  m.size = static_cast<std::int64_t>(size);
  m.limits = limits;
  Env env;
  env.vars.emplace_back(p.sizeParam, m.size);
  for (const StmtPtr& stmt : p.body) {
    if (auto outcome = m.execStmt(*stmt, env)) {
      return BoundedRun{std::move(*outcome), m.truncated};
    }
  }
  return BoundedRun{ExecOutcome{SafeRun{m.iterationsDone, std::move(m.trace)}}, m.truncated};
}

ExecOutcome run(const Program& p, const ExecConfig& cfg) {
  if (cfg.stepBudget == 0) {
    throw std::invalid_argument("run: stepBudget must be >= 1");
  }
  RunLimits limits;
  limits.totalIterations = cfg.stepBudget;
  return runBounded(p, cfg.size, limits).outcome;
}

bool safeAtSize(const Program& p, std::uint64_t size) {
  RunLimits limits;
  if (const auto t = recognizeTrav(p)) {
    limits.totalIterations = size + static_cast<std::uint64_t>(std::llabs(t->start)) +
                             static_cast<std::uint64_t>(std::llabs(t->margin)) + 2;
  }
  const BoundedRun r = runBounded(p, size, limits);
  if (std::holds_alternative<BudgetExhausted>(r.outcome)) {
    throw std::logic_error("safeAtSize: step budget exhausted");
  }
  return std::holds_alternative<SafeRun>(r.outcome);
}

}  // namespace travcheck
