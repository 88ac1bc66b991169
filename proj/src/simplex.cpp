#include "qacp/simplex.hpp"

#include <algorithm>

namespace qacp {

void LinearProgram::add(std::vector<Rational> coeffs, Rel rel, Rational rhs) {
  if (coeffs.size() != var_names.size()) {
    throw StructureError("constraint length " + std::to_string(coeffs.size()) +
                         " does not match variable count " + std::to_string(var_names.size()));
  }
  constraints.push_back(Constraint{std::move(coeffs), rel, std::move(rhs)});
}

Rational dot(const std::vector<Rational>& coeffs, const std::vector<Rational>& values) {
  if (coeffs.size() != values.size()) {
    throw StructureError("dot: length mismatch");
  }
  Rational acc = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (!coeffs[i].is_zero() && !values[i].is_zero()) acc += coeffs[i] * values[i];
  }
  return acc;
}

bool lp_satisfies(const LinearProgram& lp, const std::vector<Rational>& witness) {
  if (witness.size() != lp.num_vars()) return false;
  for (const Rational& v : witness) {
    if (v < 0) return false;
  }
  for (const auto& c : lp.constraints) {
    const Rational lhs = dot(c.coeffs, witness);
    switch (c.rel) {
      case LinearProgram::Rel::Le:
        if (lhs > c.rhs) return false;
        break;
      case LinearProgram::Rel::Ge:
        if (lhs < c.rhs) return false;
        break;
      case LinearProgram::Rel::Eq:
        if (lhs != c.rhs) return false;
        break;
    }
  }
  return true;
}

namespace {

thread_local std::vector<LpTraceEntry>* g_trace_sink = nullptr;
thread_local std::string g_trace_context;

// Dense two-phase simplex tableau over exact rationals. Bland's rule
// throughout: entering = lowest-index column with negative reduced cost;
// leaving = among the minimum-ratio rows, the one whose basic variable has
// the lowest index. No cycling, fully deterministic.
class Tableau {
 public:
  explicit Tableau(const LinearProgram& lp) : n_structural_(lp.num_vars()) {
    const std::size_t m = lp.constraints.size();
    std::size_t n_slack = 0;
    for (const auto& c : lp.constraints) {
      if (c.rel != LinearProgram::Rel::Eq) ++n_slack;
    }
    n_total_ = n_structural_ + n_slack;
    const std::size_t first_artificial = n_total_;

    rows_.reserve(m);
    basis_.reserve(m);
    std::size_t slack_col = n_structural_;
    for (const auto& c : lp.constraints) {
      Row row;
      row.coeffs.assign(n_total_, Rational(0));
      for (std::size_t j = 0; j < n_structural_; ++j) row.coeffs[j] = c.coeffs[j];
      row.rhs = c.rhs;
      LinearProgram::Rel rel = c.rel;
      if (row.rhs < 0) {
        for (auto& x : row.coeffs) x = -x;
        row.rhs = -row.rhs;
        if (rel == LinearProgram::Rel::Le) {
          rel = LinearProgram::Rel::Ge;
        } else if (rel == LinearProgram::Rel::Ge) {
          rel = LinearProgram::Rel::Le;
        }
      }
      int basic = -1;
      if (rel == LinearProgram::Rel::Le) {
        row.coeffs[slack_col] = 1;
        basic = static_cast<int>(slack_col++);
      } else if (rel == LinearProgram::Rel::Ge) {
        row.coeffs[slack_col] = -1;
        ++slack_col;
      }
      rows_.push_back(std::move(row));
      basis_.push_back(basic);
    }

    // Artificial columns for rows without a basic slack.
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (basis_[i] < 0) {
        for (auto& r : rows_) r.coeffs.push_back(Rational(0));
        rows_[i].coeffs.back() = 1;
        basis_[i] = static_cast<int>(rows_[i].coeffs.size() - 1);
      }
    }
    n_with_artificials_ = rows_.empty() ? n_total_ : rows_.front().coeffs.size();
    first_artificial_ = first_artificial;
  }

  // Minimizes the sum of artificials. Returns true when a feasible basis for
  // the original system was found.
  bool phase_one() {
    if (rows_.empty()) return true;
    std::vector<Rational> cost(n_with_artificials_, Rational(0));
    for (std::size_t j = first_artificial_; j < n_with_artificials_; ++j) cost[j] = 1;
    run(cost, n_with_artificials_);
    if (objective_value(cost) != 0) return false;
    drop_artificials();
    return true;
  }

  // Minimizes `cost` (sized n_total_) from the current feasible basis.
  // Returns false when unbounded.
  bool phase_two(const std::vector<Rational>& cost) { return run(cost, n_total_); }

  std::vector<Rational> witness() const {
    std::vector<Rational> w(n_structural_, Rational(0));
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (basis_[i] >= 0 && static_cast<std::size_t>(basis_[i]) < n_structural_) {
        w[basis_[i]] = rows_[i].rhs;
      }
    }
    return w;
  }

  Rational objective_value(const std::vector<Rational>& cost) const {
    Rational v = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational& c = cost[basis_[i]];
      if (!c.is_zero() && !rows_[i].rhs.is_zero()) v += c * rows_[i].rhs;
    }
    return v;
  }

  long pivots() const { return pivots_; }

 private:
  struct Row {
    std::vector<Rational> coeffs;
    Rational rhs;
  };

  std::size_t n_structural_;
  std::size_t n_total_;             // structural + slack
  std::size_t n_with_artificials_;  // column count during phase one
  std::size_t first_artificial_;
  std::vector<Row> rows_;
  std::vector<int> basis_;  // basic column of each row
  long pivots_ = 0;

  Rational reduced_cost(const std::vector<Rational>& cost, std::size_t col) const {
    Rational r = cost[col];
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational& cb = cost[basis_[i]];
      if (!cb.is_zero() && !rows_[i].coeffs[col].is_zero()) r -= cb * rows_[i].coeffs[col];
    }
    return r;
  }

  // Returns false when unbounded.
  bool run(const std::vector<Rational>& cost, std::size_t n_cols) {
    for (;;) {
      int enter = -1;
      for (std::size_t j = 0; j < n_cols; ++j) {
        bool basic = false;
        for (int b : basis_) {
          if (b == static_cast<int>(j)) {
            basic = true;
            break;
          }
        }
        if (basic) continue;
        if (reduced_cost(cost, j) < 0) {
          enter = static_cast<int>(j);
          break;
        }
      }
      if (enter < 0) return true;  // optimal

      int leave_row = -1;
      Rational best_ratio;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rational& a = rows_[i].coeffs[enter];
        if (a <= 0) continue;
        const Rational ratio = rows_[i].rhs / a;
        if (leave_row < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave_row])) {
          leave_row = static_cast<int>(i);
          best_ratio = ratio;
        }
      }
      if (leave_row < 0) return false;  // unbounded
      pivot(static_cast<std::size_t>(leave_row), static_cast<std::size_t>(enter));
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    ++pivots_;
    Row& pr = rows_[row];
    const Rational p = pr.coeffs[col];
    for (auto& x : pr.coeffs) x /= p;
    pr.rhs /= p;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == row) continue;
      const Rational f = rows_[i].coeffs[col];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < rows_[i].coeffs.size(); ++j) {
        if (!pr.coeffs[j].is_zero()) rows_[i].coeffs[j] -= f * pr.coeffs[j];
      }
      rows_[i].rhs -= f * pr.rhs;
    }
    basis_[row] = static_cast<int>(col);
  }

  // After a zero-value phase one: pivot artificials out of the basis where
  // possible, delete redundant rows, then remove the artificial columns.
  void drop_artificials() {
    for (std::size_t i = 0; i < rows_.size();) {
      if (basis_[i] < static_cast<int>(first_artificial_)) {
        ++i;
        continue;
      }
      std::size_t swap_col = n_with_artificials_;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (!rows_[i].coeffs[j].is_zero()) {
          swap_col = j;
          break;
        }
      }
      if (swap_col < n_with_artificials_) {
        pivot(i, swap_col);
        ++i;
      } else {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
    for (auto& r : rows_) r.coeffs.resize(n_total_);
  }
};

void record_trace(const LinearProgram& lp, const LpOutcome& out) {
  if (g_trace_sink == nullptr) return;
  LpTraceEntry e;
  e.context = g_trace_context;
  e.vars = lp.num_vars();
  e.constraints = lp.constraints.size();
  switch (out.status) {
    case LpOutcome::Status::Feasible:
      e.status = "feasible";
      break;
    case LpOutcome::Status::Infeasible:
      e.status = "infeasible";
      break;
    case LpOutcome::Status::Optimal:
      e.status = "optimal";
      e.value = rational_to_string(out.value);
      break;
    case LpOutcome::Status::Unbounded:
      e.status = "unbounded";
      break;
  }
  e.pivots = out.pivots;
  g_trace_sink->push_back(std::move(e));
}

}  // namespace

LpOutcome solve_feasibility(const LinearProgram& lp) {
  for (const auto& c : lp.constraints) {
    if (c.coeffs.size() != lp.num_vars()) {
      throw StructureError("malformed lp: constraint width mismatch");
    }
  }
  Tableau t(lp);
  LpOutcome out;
  if (t.phase_one()) {
    out.status = LpOutcome::Status::Feasible;
    out.witness = t.witness();
    if (!lp_satisfies(lp, out.witness)) {
      throw StructureError("simplex produced an invalid feasibility witness");
    }
  } else {
    out.status = LpOutcome::Status::Infeasible;
  }
  out.pivots = t.pivots();
  record_trace(lp, out);
  return out;
}

LpOutcome optimize(const LinearProgram& lp, const std::vector<Rational>& objective,
                   Direction direction) {
  if (objective.size() != lp.num_vars()) {
    throw StructureError("objective length does not match variable count");
  }
  Tableau t(lp);
  LpOutcome out;
  if (!t.phase_one()) {
    out.status = LpOutcome::Status::Infeasible;
    out.pivots = t.pivots();
    record_trace(lp, out);
    return out;
  }
  // Internally minimize; negate for Max.
  std::vector<Rational> cost(lp.num_vars(), Rational(0));
  for (std::size_t j = 0; j < objective.size(); ++j) {
    cost[j] = direction == Direction::Max ? -objective[j] : objective[j];
  }
  // Slack columns carry zero cost.
  std::vector<Rational> full_cost = cost;

  // Tableau columns include slacks; extend with zeros.
  full_cost.resize(lp.num_vars(), Rational(0));
  {
    // phase_two expects costs for every remaining column.
    std::size_t total_cols = lp.num_vars();
    for (const auto& c : lp.constraints) {
      if (c.rel != LinearProgram::Rel::Eq) ++total_cols;
    }
    full_cost.resize(total_cols, Rational(0));
  }
  if (!t.phase_two(full_cost)) {
    out.status = LpOutcome::Status::Unbounded;
    out.pivots = t.pivots();
    record_trace(lp, out);
    return out;
  }
  out.status = LpOutcome::Status::Optimal;
  out.witness = t.witness();
  if (!lp_satisfies(lp, out.witness)) {
    throw StructureError("simplex produced an invalid optimal witness");
  }
  out.value = dot(objective, out.witness);
  const Rational check = t.objective_value(full_cost);
  if ((direction == Direction::Max ? -check : check) != out.value) {
    throw StructureError("simplex objective value does not match its witness");
  }
  out.pivots = t.pivots();
  record_trace(lp, out);
  return out;
}

std::pair<std::vector<Rational>, std::vector<bool>> max_support_solution(
    const LinearProgram& lp, const std::vector<std::vector<Rational>>& tracked) {
  if (tracked.empty()) {
    LpOutcome base = solve_feasibility(lp);
    if (!base.is_feasible()) {
      throw InfeasibleSystemError("max_support_solution: system is infeasible");
    }
    return {base.witness, {}};
  }
  std::vector<std::vector<Rational>> witnesses;
  std::vector<bool> flags(tracked.size(), false);
  witnesses.reserve(tracked.size());
  for (std::size_t k = 0; k < tracked.size(); ++k) {
    LpOutcome res = optimize(lp, tracked[k], Direction::Max);
    if (res.status == LpOutcome::Status::Infeasible) {
      throw InfeasibleSystemError("max_support_solution: system is infeasible");
    }
    if (res.status == LpOutcome::Status::Unbounded) {
      // Positive but unbounded: pin the form to 1 and take any witness.
      LinearProgram pinned = lp;
      pinned.add(tracked[k], LinearProgram::Rel::Eq, Rational(1));
      LpOutcome w = solve_feasibility(pinned);
      if (!w.is_feasible()) {
        throw StructureError("max_support_solution: unbounded form with no unit witness");
      }
      flags[k] = true;
      witnesses.push_back(std::move(w.witness));
      continue;
    }
    flags[k] = res.value > 0;
    witnesses.push_back(std::move(res.witness));
  }
  std::vector<Rational> avg(lp.num_vars(), Rational(0));
  for (const auto& w : witnesses) {
    for (std::size_t j = 0; j < avg.size(); ++j) avg[j] += w[j];
  }
  const Rational k(static_cast<long>(witnesses.size()));
  for (auto& v : avg) v /= k;
  for (std::size_t j = 0; j < tracked.size(); ++j) {
    if ((dot(tracked[j], avg) > 0) != flags[j]) {
      throw StructureError(
          "max_support_solution: tracked form sign flipped under averaging (is it nonnegative on "
          "the feasible set?)");
    }
  }
  return {std::move(avg), std::move(flags)};
}

LpTraceScope::LpTraceScope(std::vector<LpTraceEntry>* sink) : previous_(g_trace_sink) {
  g_trace_sink = sink;
}

LpTraceScope::~LpTraceScope() { g_trace_sink = previous_; }

void lp_trace_context(std::string context) { g_trace_context = std::move(context); }

}  // namespace qacp
