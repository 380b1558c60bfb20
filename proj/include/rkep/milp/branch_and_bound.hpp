#pragma once

// Depth-first branch-and-bound over the binaries of a Model. One LP object is
// shared by all nodes; moving between nodes only changes column bounds, which
// the dual simplex absorbs without a phase one.

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "rkep/milp/model.hpp"
#include "rkep/milp/simplex.hpp"
#include "rkep/util/deadline.hpp"

namespace rkep::milp {

enum class SolveStatus { Optimal, Infeasible, TimeLimit };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::TimeLimit: return "timelimit";
  }
  return "?";
}

struct SolveOptions {
  double time_limit = std::numeric_limits<double>::infinity();
  /// Overrides time_limit when set; lets nested solves share one budget.
  const Deadline* deadline = nullptr;
  Tolerances tolerances{};
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::Infeasible;
  /// Incumbent objective; meaningful only when has_solution.
  double objective = 0.0;
  double best_bound = 0.0;
  std::vector<double> assignment;
  long nodes = 0;
  long lp_iterations = 0;
  bool has_solution = false;

  double value(VarId v) const { return assignment.at(v.value); }
  /// Rounded value of a binary.
  bool is_set(VarId v) const { return assignment.at(v.value) > 0.5; }
};

namespace detail {

struct Fixing {
  int var;
  double value;
};

struct Node {
  std::vector<Fixing> fixings;
  double parent_bound;  // internal (minimization) sense
};

}  // namespace detail

inline SolveOutcome solve(const Model& model, const SolveOptions& opts = {}) {
  const Deadline local(opts.time_limit);
  const Deadline& deadline = opts.deadline ? *opts.deadline : local;
  const Tolerances tol = opts.tolerances;
  const double sign = model.sense() == Sense::Maximize ? -1.0 : 1.0;
  const int n = model.num_vars();

  SolveOutcome out;
  DualSimplex lp(model, tol);

  std::vector<int> binaries;
  for (int j = 0; j < n; ++j)
    if (model.var(j).kind == VarKind::Binary) binaries.push_back(j);

  double incumbent = std::numeric_limits<double>::infinity();  // internal sense
  std::vector<double> best_x;

  auto apply = [&](const std::vector<detail::Fixing>& fixings) {
    for (int j : binaries) lp.set_bounds(j, model.var(j).lb, model.var(j).ub);
    for (const auto& f : fixings) lp.set_bounds(f.var, f.value, f.value);
  };

  // Bound below which a node may still improve the incumbent.
  auto prunable = [&](double bound) {
    if (!std::isfinite(incumbent)) return false;
    if (model.integral_objective()) return std::ceil(bound - tol.integrality) >= incumbent - 0.5;
    return bound >= incumbent - tol.gap;
  };

  // Re-solves the shared LP with every binary fixed to its rounded value;
  // returns the cleaned assignment when feasible. The next node resets bounds.
  auto polish = [&](const std::vector<double>& x) -> std::optional<std::vector<double>> {
    for (int j : binaries) {
      const double v = std::round(x[j]);
      lp.set_bounds(j, v, v);
    }
    const long before = lp.iterations();
    const LpStatus st = lp.solve(deadline);
    out.lp_iterations += lp.iterations() - before;
    if (st != LpStatus::Optimal) return std::nullopt;
    auto y = lp.primal();
    for (int j : binaries) y[j] = std::round(y[j]);
    return y;
  };

  std::vector<detail::Node> stack;
  stack.push_back({{}, -std::numeric_limits<double>::infinity()});
  bool timed_out = false;
  double open_bound = std::numeric_limits<double>::infinity();

  while (!stack.empty()) {
    if (deadline.expired()) {
      timed_out = true;
      break;
    }
    detail::Node node = std::move(stack.back());
    stack.pop_back();
    if (prunable(node.parent_bound)) continue;
    ++out.nodes;
    apply(node.fixings);
    const long before = lp.iterations();
    const LpStatus st = lp.solve(deadline);
    out.lp_iterations += lp.iterations() - before;
    if (st == LpStatus::TimeLimit) {
      timed_out = true;
      stack.push_back(std::move(node));
      break;
    }
    if (st == LpStatus::Infeasible) continue;
    const double bound = sign * lp.objective(model.sense());
    if (prunable(bound)) continue;

    const std::vector<double> x = lp.primal();
    int branch = -1;
    double best_frac = tol.integrality;
    for (int j : binaries) {
      const double frac = std::abs(x[j] - std::round(x[j]));
      if (frac > best_frac + 1e-12) {
        best_frac = frac;
        branch = j;
      }
    }
    if (branch < 0) {
      auto y = polish(x);
      if (!y) continue;  // only numerically feasible; treat as infeasible
      const double val = sign * model.evaluate_objective(*y);
      if (val < incumbent) {
        incumbent = val;
        best_x = std::move(*y);
      }
      continue;
    }
    const double gain = -sign * model.var(branch).obj;  // objective change per unit, maximization sense
    const double first = gain >= 0 ? 1.0 : 0.0;
    detail::Node second_child{node.fixings, bound};
    second_child.fixings.push_back({branch, 1.0 - first});
    detail::Node first_child{std::move(node.fixings), bound};
    first_child.fixings.push_back({branch, first});
    stack.push_back(std::move(second_child));
    stack.push_back(std::move(first_child));
  }

  if (timed_out) {
    for (const auto& nd : stack) open_bound = std::min(open_bound, nd.parent_bound);
    // the root node's parent bound is -inf; fall back to the LP-free bound
    out.status = SolveStatus::TimeLimit;
  } else {
    out.status = std::isfinite(incumbent) ? SolveStatus::Optimal : SolveStatus::Infeasible;
  }
  out.has_solution = std::isfinite(incumbent);
  if (out.has_solution) {
    out.assignment = std::move(best_x);
    out.objective = sign * incumbent;
  }
  if (out.status == SolveStatus::Optimal) {
    out.best_bound = out.objective;
  } else if (out.status == SolveStatus::TimeLimit) {
    const double b = std::min(open_bound, incumbent);
    out.best_bound = std::isfinite(b) ? sign * b : sign * -std::numeric_limits<double>::infinity();
  }
  return out;
}

}  // namespace rkep::milp
