#pragma once

// Attacker subproblem by cut generation: the attacker MILP proposes an attack,
// the recourse MILP answers with the best recourse solution, whose interdiction
// cut is added until the two values meet.

#include <cmath>

#include "rkep/formulations/recourse.hpp"
#include "rkep/formulations/subproblem.hpp"
#include "rkep/solvers/types.hpp"

namespace rkep {

namespace detail {

inline milp::SolveOutcome solve_or_throw(const milp::Model& m, const Deadline& dl) {
  check_time(dl);
  milp::SolveOptions opt;
  opt.deadline = &dl;
  auto out = milp::solve(m, opt);
  if (out.status == milp::SolveStatus::TimeLimit) throw TimedOut{};
  if (out.status != milp::SolveStatus::Optimal) throw Error("solver model unexpectedly infeasible");
  return out;
}

inline int rounded(double v) { return static_cast<int>(std::lround(v)); }

inline CutSolution solve_recourse(const KepSolution& x, const Attack& u, const Instance& inst, Policy policy,
                                  Encoding encoding, bool lifted, const Deadline& dl, SubproblemStats& stats) {
  const auto start = Clock::now();
  auto h = build_recourse(x, u, inst, policy, encoding, lifted);
  auto out = solve_or_throw(h.model, dl);
  auto cs = extract_cut_solution(h, inst, out);
  stats.time_stage3 += seconds_since(start);
  ++stats.recourse_solves;
  return cs;
}

}  // namespace detail

inline AttackResult solve_attack_subproblem_cuttingplane(const KepSolution& x, const Instance& inst,
                                                         const RobustConfig& cfg, int master_value,
                                                         const Deadline* deadline = nullptr) {
  cfg.validate();
  const Deadline local(cfg.time_limit);
  const Deadline& dl = deadline ? *deadline : local;
  AttackResult res;
  res.attack = Attack({}, cfg.budget);
  if (x.covered_pairs(inst.graph).empty()) {
    res.exact = true;
    return res;
  }
  try {
    auto sub = build_subproblem(x, inst, cfg.policy, cfg.encoding, cfg.budget);
    add_interdiction_cut(sub, x);
    res.stats.cuts = 1;
    while (true) {
      const auto start = Clock::now();
      auto out = detail::solve_or_throw(sub.model, dl);
      res.stats.time_stage2 += seconds_since(start);
      ++res.stats.iterations;
      const int lower = detail::rounded(out.objective);
      const Attack u = extract_attack(sub, out, cfg.budget);
      const CutSolution cs =
          detail::solve_recourse(x, u, inst, cfg.policy, cfg.encoding, cfg.lifting, dl, res.stats);
      res.attack = u;
      res.value = cs.recourse_value;
      if (cfg.early_exit && cs.recourse_value < master_value) return res;
      if (cs.recourse_value <= lower) {
        res.exact = true;
        return res;
      }
      if (cfg.on_cut) cfg.on_cut(x, u, cs);
      add_interdiction_cut(sub, cfg.lifting ? cs.solution : cs.recourse);
      ++res.stats.cuts;
    }
  } catch (const detail::TimedOut&) {
    res.timed_out = true;
  }
  return res;
}

}  // namespace rkep
