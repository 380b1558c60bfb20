#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "rkep/formulations/recourse.hpp"
#include "rkep/kep.hpp"
#include "rkep/util/deadline.hpp"

namespace rkep {

enum class SubproblemMethod { CuttingPlane, BranchAndBound, Oracle };

inline const char* to_string(SubproblemMethod m) {
  switch (m) {
    case SubproblemMethod::CuttingPlane: return "cut";
    case SubproblemMethod::BranchAndBound: return "bb";
    case SubproblemMethod::Oracle: return "oracle";
  }
  return "?";
}

struct RobustConfig {
  int max_cycle = 3;
  int max_chain = 3;
  int budget = 1;
  Policy policy = Policy::FullRecourse;
  Encoding encoding = Encoding::CC;
  SubproblemMethod method = SubproblemMethod::CuttingPlane;
  bool lifting = false;
  /// Stop the attacker subproblem as soon as an attack beats the master value.
  bool early_exit = true;
  double time_limit = 3600.0;
  std::uint64_t seed = 0;
  /// Upper limit on the work the brute-force oracles accept.
  long enumeration_cap = 5'000'000;
  /// Called by the cutting-plane method for every cut taken from a recourse solve.
  std::function<void(const KepSolution& initial, const Attack& attack, const CutSolution& cut)> on_cut;

  void validate() const {
    if (budget < 0) throw Error("attack budget must be non-negative");
    if (max_cycle < 0 || max_chain < 0) throw Error("exchange length limits must be non-negative");
    if (!(time_limit > 0)) throw Error("time limit must be positive");
    if (enumeration_cap <= 0) throw Error("enumeration cap must be positive");
  }
};

struct SubproblemStats {
  long iterations = 0;  // subproblem MILP solves, or tree nodes for the branch-and-bound method
  long cuts = 0;
  long recourse_solves = 0;
  long bb_nodes = 0;
  double time_stage2 = 0.0;
  double time_stage3 = 0.0;

  SubproblemStats& operator+=(const SubproblemStats& o) {
    iterations += o.iterations;
    cuts += o.cuts;
    recourse_solves += o.recourse_solves;
    bb_nodes += o.bb_nodes;
    time_stage2 += o.time_stage2;
    time_stage3 += o.time_stage3;
    return *this;
  }
};

struct AttackResult {
  Attack attack;
  /// Recourse value under `attack`; equals s(x) when `exact`.
  int value = 0;
  bool exact = false;
  bool timed_out = false;
  SubproblemStats stats;
};

enum class RobustStatus { Optimal, TimeLimit };

inline const char* to_string(RobustStatus s) { return s == RobustStatus::Optimal ? "optimal" : "timelimit"; }

struct RobustStats {
  long master_iterations = 0;
  long n_attacks = 0;  // generated attacks, the zero seed attack excluded
  long n_subproblems = 0;
  long n_cuts = 0;
  long bb_nodes = 0;
  double time_total = 0.0;
  double time_master = 0.0;
  double time_stage2 = 0.0;
  double time_stage3 = 0.0;
};

struct RobustResult {
  RobustStatus status = RobustStatus::Optimal;
  /// Optimal value, or the best proven lower bound on a time-out.
  int z_star = 0;
  /// Best proven upper bound; equals z_star when optimal.
  int upper_bound = 0;
  KepSolution initial;
  std::vector<Attack> attacks;
  Attack worst_attack;
  RobustStats stats;
};

namespace detail {

struct TimedOut {};

inline void check_time(const Deadline& dl) {
  if (dl.expired()) throw TimedOut{};
}

}  // namespace detail

}  // namespace rkep
