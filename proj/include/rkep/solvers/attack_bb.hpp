#pragma once

// Reference branch-and-bound over attack variables. Each node fixes some
// vertices attacked (A1) or spared (A0), fills the attack greedily up to the
// budget, and evaluates the exact recourse at the filled attack.

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "rkep/solvers/cutting_plane.hpp"

namespace rkep {

namespace detail {

struct AttackNode {
  std::vector<Vertex> attacked;  // A1
  std::vector<char> fixed;       // per vertex: in A1 or A0
};

struct GreedyFill {
  std::vector<Vertex> attack;
  Vertex first_added = -1;
};

inline GreedyFill greedy_fill(const AttackNode& node, const std::vector<Exchange>& initial,
                              const std::vector<int>& weight, int budget) {
  GreedyFill f;
  f.attack = node.attacked;
  std::vector<char> fixed = node.fixed;
  std::vector<char> hit(initial.size(), 0);
  auto refresh_hits = [&] {
    for (std::size_t k = 0; k < initial.size(); ++k)
      hit[k] = std::any_of(initial[k].vertices.begin(), initial[k].vertices.end(), [&](Vertex v) {
        return std::find(f.attack.begin(), f.attack.end(), v) != f.attack.end();
      });
  };
  refresh_hits();
  while (static_cast<int>(f.attack.size()) < budget) {
    int pick = -1;
    for (std::size_t k = 0; k < initial.size(); ++k) {
      if (hit[k]) continue;
      const bool open = std::any_of(initial[k].vertices.begin(), initial[k].vertices.end(),
                                    [&](Vertex v) { return !fixed[v]; });
      if (open && (pick < 0 || weight[k] > weight[pick])) pick = static_cast<int>(k);
    }
    Vertex v = -1;
    if (pick >= 0) {
      for (Vertex j : initial[pick].vertices)
        if (!fixed[j] && (v < 0 || j < v)) v = j;
    } else {
      const auto it = std::find(fixed.begin(), fixed.end(), 0);
      if (it == fixed.end()) break;
      v = static_cast<Vertex>(it - fixed.begin());
    }
    fixed[v] = 1;
    f.attack.push_back(v);
    if (f.first_added < 0) f.first_added = v;
    refresh_hits();
  }
  return f;
}

// Value if every remaining attack hit a distinct initial exchange and no
// recourse repaired anything.
inline int node_lower_bound(const AttackNode& node, const std::vector<Exchange>& initial,
                            const std::vector<int>& weight, int total, int budget) {
  int value = total;
  std::vector<int> open;
  for (std::size_t k = 0; k < initial.size(); ++k) {
    const auto& vs = initial[k].vertices;
    const bool hit = std::any_of(vs.begin(), vs.end(), [&](Vertex v) {
      return std::find(node.attacked.begin(), node.attacked.end(), v) != node.attacked.end();
    });
    if (hit) value -= weight[k];
    else if (std::any_of(vs.begin(), vs.end(), [&](Vertex v) { return !node.fixed[v]; })) open.push_back(weight[k]);
  }
  std::sort(open.rbegin(), open.rend());
  const int left = budget - static_cast<int>(node.attacked.size());
  for (int k = 0; k < left && k < static_cast<int>(open.size()); ++k) value -= open[k];
  return value;
}

}  // namespace detail

inline AttackResult solve_attack_subproblem_bb(const KepSolution& x, const Instance& inst, const RobustConfig& cfg,
                                               int master_value, const Deadline* deadline = nullptr) {
  cfg.validate();
  const Deadline local(cfg.time_limit);
  const Deadline& dl = deadline ? *deadline : local;
  const auto px = x.covered_pairs(inst.graph);
  const std::vector<Exchange>& initial = x.exchanges();
  std::vector<int> weight;
  for (const auto& e : initial) weight.push_back(exchange_weight(e, px));
  const int total = static_cast<int>(px.size());

  AttackResult res;
  res.attack = Attack({}, cfg.budget);
  res.value = std::numeric_limits<int>::max();
  std::map<std::vector<Vertex>, int> seen;
  auto evaluate = [&](std::vector<Vertex> attack) {
    std::sort(attack.begin(), attack.end());
    if (auto it = seen.find(attack); it != seen.end()) return it->second;
    const Attack u(attack, cfg.budget);
    const int r = total == 0 ? 0
                             : detail::solve_recourse(x, u, inst, cfg.policy, cfg.encoding, false, dl, res.stats)
                                   .recourse_value;
    seen.emplace(attack, r);
    if (r < res.value) {
      res.value = r;
      res.attack = u;
    }
    return r;
  };

  const auto start = Clock::now();
  bool stopped = false;
  try {
    std::vector<detail::AttackNode> stack{{{}, std::vector<char>(inst.num_vertices(), 0)}};
    while (!stack.empty()) {
      detail::check_time(dl);
      detail::AttackNode node = std::move(stack.back());
      stack.pop_back();
      ++res.stats.bb_nodes;
      if (res.value != std::numeric_limits<int>::max() &&
          detail::node_lower_bound(node, initial, weight, total, cfg.budget) >= res.value)
        continue;
      const auto fill = detail::greedy_fill(node, initial, weight, cfg.budget);
      evaluate(fill.attack);
      if (cfg.early_exit && res.value < master_value) {
        stopped = true;
        break;
      }
      if (fill.first_added < 0) continue;
      detail::AttackNode spared = node, attacked = std::move(node);
      spared.fixed[fill.first_added] = 1;
      attacked.fixed[fill.first_added] = 1;
      attacked.attacked.push_back(fill.first_added);
      stack.push_back(std::move(spared));
      stack.push_back(std::move(attacked));  // explored first
    }
    res.exact = !stopped;
  } catch (const detail::TimedOut&) {
    res.timed_out = true;
  }
  res.stats.iterations = res.stats.bb_nodes;
  res.stats.time_stage2 = seconds_since(start) - res.stats.time_stage3;
  return res;
}

}  // namespace rkep
