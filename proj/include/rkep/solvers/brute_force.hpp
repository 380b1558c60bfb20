#pragma once

// Exhaustive oracles for tiny instances: every attack, every initial solution,
// and an exact recourse search by depth-first enumeration.

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include "rkep/solvers/types.hpp"

namespace rkep {

namespace detail {

// Branches on the lowest free initial pair: cover it with some candidate, or leave it.
struct RecourseSearch {
  const Instance& inst;
  std::vector<int> candidates;
  std::vector<int> weight;  // per pool index
  std::vector<char> blocked;
  std::vector<Vertex> targets;  // free initial pairs, in id order
  long* budget;
  int best = 0;
  std::vector<int> best_pick, pick;

  void run(std::size_t t, int value, int reachable) {
    if (--*budget < 0) throw Error("brute-force enumeration cap exceeded");
    if (value > best) {
      best = value;
      best_pick = pick;
    }
    if (value + reachable <= best) return;
    while (t < targets.size() && blocked[targets[t]]) ++t;
    if (t == targets.size()) return;
    const Vertex v = targets[t];
    for (int k : inst.pool.involving(v)) {
      if (!std::binary_search(candidates.begin(), candidates.end(), k)) continue;
      const Exchange& e = inst.pool[k];
      if (std::any_of(e.vertices.begin(), e.vertices.end(), [&](Vertex j) { return blocked[j]; })) continue;
      int lost = 0;
      for (Vertex j : e.vertices) {
        blocked[j] = 1;
        lost += is_target(j);
      }
      pick.push_back(k);
      run(t + 1, value + weight[k], reachable - lost);
      pick.pop_back();
      for (Vertex j : e.vertices) blocked[j] = 0;
    }
    // leave v uncovered
    blocked[v] = 1;
    run(t + 1, value, reachable - 1);
    blocked[v] = 0;
  }

  bool is_target(Vertex j) const { return std::binary_search(targets.begin(), targets.end(), j); }
};

}  // namespace detail

/// Exact recourse value by exhaustive search. Under fse the enforced exchanges
/// are kept and everything touching them is excluded. Requires enumerated chains.
inline int brute_force_recourse(const Instance& inst, const KepSolution& x, const Attack& u, Policy policy,
                                long& work, KepSolution* witness = nullptr) {
  detail::require_chains(inst);
  const auto px = x.covered_pairs(inst.graph);
  const int n = inst.num_vertices();
  detail::RecourseSearch s{inst, {}, std::vector<int>(inst.pool.size(), 0), std::vector<char>(n, 0), {}, &work};
  for (Vertex v : u.vertices()) s.blocked[v] = 1;
  int fixed_value = 0;
  std::vector<Exchange> fixed;
  if (policy == Policy::FixSuccessfulExchanges) {
    for (auto& e : enforced_exchanges(x, u)) {
      fixed_value += exchange_weight(e, px);
      for (Vertex v : e.vertices) s.blocked[v] = 1;
      fixed.push_back(std::move(e));
    }
  }
  for (int k = 0; k < inst.pool.size(); ++k) {
    const Exchange& e = inst.pool[k];
    s.weight[k] = exchange_weight(e, px);
    if (s.weight[k] > 0 && std::none_of(e.vertices.begin(), e.vertices.end(), [&](Vertex j) { return s.blocked[j]; }))
      s.candidates.push_back(k);
  }
  for (Vertex v : px)
    if (!s.blocked[v]) s.targets.push_back(v);
  s.run(0, 0, static_cast<int>(s.targets.size()));
  if (witness) {
    KepSolution y(fixed);
    for (int k : s.best_pick) y.add(inst.pool[k]);
    *witness = std::move(y);
  }
  return fixed_value + s.best;
}

/// Calls f on every vertex subset of size at most `budget`, smallest first by
/// depth-first order. f returns false to stop.
inline void for_each_attack(int num_vertices, int budget, const std::function<bool(const Attack&)>& f) {
  std::vector<Vertex> cur;
  bool stop = false;
  std::function<void(int)> rec = [&](int from) {
    if (stop) return;
    if (!f(Attack(cur, budget))) {
      stop = true;
      return;
    }
    if (static_cast<int>(cur.size()) == budget) return;
    for (int v = from; v < num_vertices && !stop; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

inline double count_attacks(int num_vertices, int budget) {
  double total = 0, term = 1;
  for (int k = 0; k <= std::min(budget, num_vertices); ++k) {
    total += term;
    term = term * (num_vertices - k) / (k + 1);
  }
  return total;
}

namespace detail {

inline AttackResult brute_force_attack_impl(const KepSolution& x, const Instance& inst, const RobustConfig& cfg,
                                            long& work, int stop_at = -1) {
  AttackResult best;
  best.value = std::numeric_limits<int>::max();
  best.exact = true;
  for_each_attack(inst.num_vertices(), cfg.budget, [&](const Attack& u) {
    const int r = brute_force_recourse(inst, x, u, cfg.policy, work);
    ++best.stats.recourse_solves;
    if (r < best.value) {
      best.value = r;
      best.attack = u;
    }
    return best.value > stop_at;
  });
  return best;
}

}  // namespace detail

/// min over attacks of the exact recourse value.
inline AttackResult brute_force_attack(const KepSolution& x, const Instance& inst, const RobustConfig& cfg) {
  cfg.validate();
  if (!x.is_disjoint()) throw Error("initial solution is not a packing");
  if (count_attacks(inst.num_vertices(), cfg.budget) > cfg.enumeration_cap)
    throw Error("brute-force enumeration cap exceeded");
  long work = cfg.enumeration_cap;
  const auto start = Clock::now();
  AttackResult r = detail::brute_force_attack_impl(x, inst, cfg, work);
  r.stats.time_stage3 = seconds_since(start);
  return r;
}

/// Calls f on every packing of the pool; maximal ones only when `maximal_only`.
inline void for_each_packing(const Instance& inst, bool maximal_only, long& work,
                             const std::function<void(const KepSolution&)>& f) {
  const auto& pool = inst.pool;
  std::vector<int> used(inst.num_vertices(), 0);
  std::vector<Exchange> chosen;
  auto fits = [&](int k) {
    return std::none_of(pool[k].vertices.begin(), pool[k].vertices.end(), [&](Vertex v) { return used[v]; });
  };
  std::function<void(int)> rec = [&](int from) {
    if (--work < 0) throw Error("brute-force enumeration cap exceeded");
    bool extended = false;
    for (int k = from; k < pool.size(); ++k) {
      if (!fits(k)) continue;
      extended = true;
      for (Vertex v : pool[k].vertices) used[v] = 1;
      chosen.push_back(pool[k]);
      rec(k + 1);
      chosen.pop_back();
      for (Vertex v : pool[k].vertices) used[v] = 0;
    }
    if (maximal_only) {
      if (extended) return;
      for (int k = 0; k < from; ++k)
        if (fits(k)) return;
    }
    f(KepSolution(chosen));
  };
  rec(0);
}

/// max over initial solutions of brute_force_attack. Full recourse is monotone
/// in the initial solution, so only maximal packings are tried there.
inline RobustResult brute_force_robust(const Instance& inst, const RobustConfig& cfg) {
  cfg.validate();
  detail::require_chains(inst);
  if (count_attacks(inst.num_vertices(), cfg.budget) > cfg.enumeration_cap)
    throw Error("brute-force enumeration cap exceeded");
  const auto start = Clock::now();
  long work = cfg.enumeration_cap;
  RobustResult res;
  bool have = false;
  for_each_packing(inst, cfg.policy == Policy::FullRecourse, work, [&](const KepSolution& x) {
    const int cover = static_cast<int>(x.covered_pairs(inst.graph).size());
    if (have && cover <= res.z_star) return;
    // attacks that already push below the incumbent cannot produce a better x
    AttackResult a = detail::brute_force_attack_impl(x, inst, cfg, work, have ? res.z_star : -1);
    if (!have || a.value > res.z_star) {
      res.z_star = a.value;
      res.initial = x;
      res.worst_attack = a.attack;
      have = true;
    }
  });
  res.upper_bound = res.z_star;
  res.attacks = {res.worst_attack};
  res.stats.time_total = seconds_since(start);
  return res;
}

}  // namespace rkep
