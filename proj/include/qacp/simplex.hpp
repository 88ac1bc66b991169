#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qacp/errors.hpp"
#include "qacp/rational.hpp"

namespace qacp {

/// Linear program over nonnegative variables. Relations compare the left-hand
/// combination against the right-hand constant.
struct LinearProgram {
  enum class Rel { Le, Ge, Eq };

  struct Constraint {
    std::vector<Rational> coeffs;
    Rel rel = Rel::Eq;
    Rational rhs;
  };

  std::vector<std::string> var_names;
  std::vector<Constraint> constraints;

  std::size_t num_vars() const { return var_names.size(); }
  void add(std::vector<Rational> coeffs, Rel rel, Rational rhs);
};

enum class Direction { Min, Max };

struct LpOutcome {
  enum class Status { Feasible, Infeasible, Optimal, Unbounded };

  Status status = Status::Infeasible;
  Rational value;                 // Optimal only
  std::vector<Rational> witness;  // Feasible / Optimal: one exact value per variable
  long pivots = 0;

  bool is_feasible() const { return status == Status::Feasible || status == Status::Optimal; }
};

/// Phase-one simplex with Bland's pivoting rule; deterministic for a fixed
/// input. Returns Feasible with an exact witness, or Infeasible.
LpOutcome solve_feasibility(const LinearProgram& lp);

/// Two-phase simplex, Bland's rule. Returns Optimal (exact value + vertex
/// witness), Infeasible or Unbounded.
LpOutcome optimize(const LinearProgram& lp, const std::vector<Rational>& objective,
                   Direction direction);

/// A solution that is strictly positive on every tracked linear form that can
/// be positive somewhere on the feasible set: maximizes each tracked form and
/// averages the optimal witnesses with equal weights. The flags mark exactly
/// the forms positive at the returned witness. Tracked forms must be
/// nonnegative over the feasible set. Throws InfeasibleSystemError when the
/// lp is infeasible.
std::pair<std::vector<Rational>, std::vector<bool>> max_support_solution(
    const LinearProgram& lp, const std::vector<std::vector<Rational>>& tracked);

/// Exact substitution check of every constraint (and nonnegativity).
bool lp_satisfies(const LinearProgram& lp, const std::vector<Rational>& witness);

Rational dot(const std::vector<Rational>& coeffs, const std::vector<Rational>& values);

/// Optional trace sink for LPs solved on this thread (used by the CLI's
/// --trace). Scope-bound: installs on construction, removes on destruction.
struct LpTraceEntry {
  std::string context;
  std::size_t vars = 0;
  std::size_t constraints = 0;
  std::string status;
  std::string value;
  long pivots = 0;
};

class LpTraceScope {
 public:
  explicit LpTraceScope(std::vector<LpTraceEntry>* sink);
  ~LpTraceScope();
  LpTraceScope(const LpTraceScope&) = delete;
  LpTraceScope& operator=(const LpTraceScope&) = delete;

 private:
  std::vector<LpTraceEntry>* previous_;
};

/// Sets the context string attached to subsequently traced solves.
void lp_trace_context(std::string context);

}  // namespace qacp
