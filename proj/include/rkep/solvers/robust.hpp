#pragma once

// Column-and-constraint generation: the master picks an initial solution that
// is best against the known attacks, the attacker subproblem looks for a worse
// attack, and the loop stops when none exists.

#include <algorithm>

#include "rkep/formulations/master.hpp"
#include "rkep/solvers/attack_bb.hpp"
#include "rkep/solvers/brute_force.hpp"
#include "rkep/solvers/cutting_plane.hpp"

namespace rkep {

inline AttackResult solve_attack_subproblem(const KepSolution& x, const Instance& inst, const RobustConfig& cfg,
                                            int master_value, const Deadline* deadline = nullptr) {
  switch (cfg.method) {
    case SubproblemMethod::CuttingPlane:
      return solve_attack_subproblem_cuttingplane(x, inst, cfg, master_value, deadline);
    case SubproblemMethod::BranchAndBound:
      return solve_attack_subproblem_bb(x, inst, cfg, master_value, deadline);
    case SubproblemMethod::Oracle:
      break;
  }
  return brute_force_attack(x, inst, cfg);
}

/// Instance with the structures the configured method needs.
inline Instance make_instance(const CompatibilityGraph& graph, const RobustConfig& cfg) {
  const bool chains = cfg.encoding == Encoding::CC || cfg.method == SubproblemMethod::Oracle;
  return make_instance(graph, cfg.max_cycle, cfg.max_chain, chains);
}

inline RobustResult solve_robust(const Instance& inst, const RobustConfig& cfg) {
  cfg.validate();
  if (inst.max_cycle != cfg.max_cycle || inst.max_chain != cfg.max_chain)
    throw Error("instance length limits differ from the configuration");
  const auto start = Clock::now();
  const Deadline dl(cfg.time_limit);
  RobustResult res;
  res.upper_bound = inst.num_pairs();
  res.attacks = {Attack({}, cfg.budget)};
  try {
    auto master = build_master(inst, cfg.policy, cfg.encoding, res.attacks);
    while (true) {
      const auto t0 = Clock::now();
      const auto out = detail::solve_or_throw(master.model, dl);
      res.stats.time_master += seconds_since(t0);
      ++res.stats.master_iterations;
      const int zbar = detail::rounded(out.objective);
      res.upper_bound = std::min(res.upper_bound, zbar);
      const KepSolution x = extract_initial_solution(master, inst, out);

      AttackResult sub = solve_attack_subproblem(x, inst, cfg, zbar, &dl);
      res.stats.n_subproblems += sub.stats.iterations;
      res.stats.n_cuts += sub.stats.cuts;
      res.stats.bb_nodes += sub.stats.bb_nodes;
      res.stats.time_stage2 += sub.stats.time_stage2;
      res.stats.time_stage3 += sub.stats.time_stage3;
      if (sub.timed_out) throw detail::TimedOut{};
      if (sub.exact && sub.value > res.z_star) {
        res.z_star = sub.value;
        res.initial = x;
        res.worst_attack = sub.attack;
      }
      if (sub.value > zbar) throw Error("attacker subproblem exceeds the master value");
      if (sub.value == zbar) {
        res.z_star = zbar;
        res.initial = x;
        res.worst_attack = sub.attack;
        break;
      }
      if (std::find(res.attacks.begin(), res.attacks.end(), sub.attack) != res.attacks.end())
        throw Error("attacker subproblem returned an attack the master already covers");
      res.attacks.push_back(sub.attack);
      ++res.stats.n_attacks;
      extend_master_with_attack(master, inst, sub.attack);
    }
    res.status = RobustStatus::Optimal;
    res.upper_bound = res.z_star;
  } catch (const detail::TimedOut&) {
    res.status = RobustStatus::TimeLimit;
  }
  res.stats.time_total = seconds_since(start);
  return res;
}

inline RobustResult solve_robust(const CompatibilityGraph& graph, const RobustConfig& cfg) {
  return solve_robust(make_instance(graph, cfg), cfg);
}

}  // namespace rkep
