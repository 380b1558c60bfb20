#pragma once

// Exhaustive reference computations for tiny instances. Deliberately naive:
// they walk every packing of the exchange pool and every attack.

#include <algorithm>
#include <functional>
#include <vector>

#include "rkep/graph.hpp"
#include "rkep/kep.hpp"

namespace rkep::testing {

/// Calls f on every maximal packing of the pool restricted to `allowed`.
inline void for_each_maximal_packing(const Instance& inst, const std::vector<char>& allowed,
                                     const std::function<void(const std::vector<int>&)>& f) {
  const auto& pool = inst.pool;
  std::vector<int> used(inst.num_vertices(), 0), chosen;
  auto fits = [&](int k) {
    for (Vertex v : pool[k].vertices)
      if (used[v]) return false;
    return true;
  };
  auto mark = [&](int k, int d) {
    for (Vertex v : pool[k].vertices) used[v] += d;
  };
  std::function<void(int)> rec = [&](int from) {
    bool extended = false;
    for (int k = from; k < pool.size(); ++k) {
      if (!allowed[k] || !fits(k)) continue;
      extended = true;
      chosen.push_back(k);
      mark(k, 1);
      rec(k + 1);
      mark(k, -1);
      chosen.pop_back();
    }
    if (extended) return;
    for (int k = 0; k < pool.size(); ++k)
      if (allowed[k] && fits(k)) return;  // skipped an earlier candidate: not maximal
    f(chosen);
  };
  rec(0);
}

inline std::vector<KepSolution> maximal_packings(const Instance& inst) {
  std::vector<KepSolution> out;
  for_each_maximal_packing(inst, std::vector<char>(inst.pool.size(), 1), [&](const std::vector<int>& ks) {
    std::vector<Exchange> ex;
    for (int k : ks) ex.push_back(inst.pool[k]);
    out.emplace_back(std::move(ex));
  });
  return out;
}

/// Best admissible recourse value, trying every packing of surviving exchanges.
inline int oracle_recourse(const Instance& inst, const KepSolution& x, const Attack& u, Policy policy) {
  const auto px = x.covered_pairs(inst.graph);
  std::vector<char> allowed(inst.pool.size(), 0);
  for (int k = 0; k < inst.pool.size(); ++k) allowed[k] = !u.hits(inst.pool[k]);
  int best = -1;
  // non-maximal packings matter under fse, so enumerate every subset by recursion
  std::vector<int> used(inst.num_vertices(), 0);
  std::vector<Exchange> chosen;
  std::function<void(int)> rec = [&](int from) {
    KepSolution y(chosen);
    if (is_admissible_recourse(x, u, y, policy)) best = std::max(best, objective_value(inst.graph, x, u, y));
    for (int k = from; k < inst.pool.size(); ++k) {
      if (!allowed[k]) continue;
      const auto& e = inst.pool[k];
      if (std::any_of(e.vertices.begin(), e.vertices.end(), [&](Vertex v) { return used[v]; })) continue;
      for (Vertex v : e.vertices) used[v] = 1;
      chosen.push_back(e);
      rec(k + 1);
      chosen.pop_back();
      for (Vertex v : e.vertices) used[v] = 0;
    }
  };
  rec(0);
  return best;
}

inline void for_each_attack(int n, int budget, const std::function<void(const Attack&)>& f) {
  std::vector<Vertex> cur;
  std::function<void(int)> rec = [&](int from) {
    f(Attack(cur, budget));
    if (static_cast<int>(cur.size()) == budget) return;
    for (int v = from; v < n; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

inline int oracle_worst_case(const Instance& inst, const KepSolution& x, int budget, Policy policy) {
  int worst = 1 << 30;
  for_each_attack(inst.num_vertices(), budget,
                  [&](const Attack& u) { worst = std::min(worst, oracle_recourse(inst, x, u, policy)); });
  return worst;
}

inline int oracle_robust(const Instance& inst, int budget, Policy policy) {
  int best = 0;
  for (const auto& x : maximal_packings(inst)) best = std::max(best, oracle_worst_case(inst, x, budget, policy));
  if (policy == Policy::FixSuccessfulExchanges) {
    // fse is not monotone in x, so every packing is a candidate
    std::vector<int> used(inst.num_vertices(), 0);
    std::vector<Exchange> chosen;
    std::function<void(int)> rec = [&](int from) {
      best = std::max(best, oracle_worst_case(inst, KepSolution(chosen), budget, policy));
      for (int k = from; k < inst.pool.size(); ++k) {
        const auto& e = inst.pool[k];
        if (std::any_of(e.vertices.begin(), e.vertices.end(), [&](Vertex v) { return used[v]; })) continue;
        for (Vertex v : e.vertices) used[v] = 1;
        chosen.push_back(e);
        rec(k + 1);
        chosen.pop_back();
        for (Vertex v : e.vertices) used[v] = 0;
      }
    };
    rec(0);
  }
  return best;
}

}  // namespace rkep::testing
