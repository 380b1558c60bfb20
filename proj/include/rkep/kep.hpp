#pragma once

// Solutions, attacks and the policy-dependent bookkeeping of the robust
// problem: enforceable and enforced exchanges, exchange weights, and the
// trilevel objective.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "rkep/graph.hpp"

namespace rkep {

enum class Policy { FullRecourse, FixSuccessfulExchanges };

inline const char* to_string(Policy p) {
  return p == Policy::FullRecourse ? "fr" : "fse";
}

/// Set of pairwise vertex-disjoint exchanges.
class KepSolution {
 public:
  KepSolution() = default;
  explicit KepSolution(std::vector<Exchange> exchanges) : exchanges_(std::move(exchanges)) {
    std::sort(exchanges_.begin(), exchanges_.end());
  }

  const std::vector<Exchange>& exchanges() const { return exchanges_; }
  bool empty() const { return exchanges_.empty(); }
  std::size_t size() const { return exchanges_.size(); }

  void add(Exchange e) {
    exchanges_.insert(std::upper_bound(exchanges_.begin(), exchanges_.end(), e), std::move(e));
  }

  bool is_disjoint() const {
    std::set<Vertex> seen;
    for (const auto& e : exchanges_)
      for (Vertex v : e.vertices)
        if (!seen.insert(v).second) return false;
    return true;
  }

  std::vector<Exchange> cycles() const {
    std::vector<Exchange> out;
    for (const auto& e : exchanges_)
      if (e.is_cycle()) out.push_back(e);
    return out;
  }
  std::vector<Exchange> chains() const {
    std::vector<Exchange> out;
    for (const auto& e : exchanges_)
      if (e.is_chain()) out.push_back(e);
    return out;
  }

  /// P(x): pairs covered by the solution.
  std::set<Vertex> covered_pairs(const CompatibilityGraph& graph) const {
    std::set<Vertex> out;
    for (const auto& e : exchanges_)
      for (Vertex v : e.vertices)
        if (graph.is_pair(v)) out.insert(v);
    return out;
  }

  friend bool operator==(const KepSolution&, const KepSolution&) = default;

 private:
  std::vector<Exchange> exchanges_;
};

/// Up to `budget` withdrawn donors.
class Attack {
 public:
  Attack() = default;
  Attack(std::vector<Vertex> attacked, int budget) : attacked_(std::move(attacked)), budget_(budget) {
    std::sort(attacked_.begin(), attacked_.end());
    attacked_.erase(std::unique(attacked_.begin(), attacked_.end()), attacked_.end());
    if (budget < 0) throw Error("attack budget must be non-negative");
    if (static_cast<int>(attacked_.size()) > budget)
      throw Error("attack of size " + std::to_string(attacked_.size()) + " exceeds budget " +
                  std::to_string(budget));
  }

  const std::vector<Vertex>& vertices() const { return attacked_; }
  int budget() const { return budget_; }
  int size() const { return static_cast<int>(attacked_.size()); }
  bool empty() const { return attacked_.empty(); }

  bool contains(Vertex v) const { return std::binary_search(attacked_.begin(), attacked_.end(), v); }

  bool hits(const Exchange& e) const {
    return std::any_of(e.vertices.begin(), e.vertices.end(), [&](Vertex v) { return contains(v); });
  }

  bool in_range(int num_vertices) const {
    return attacked_.empty() || (attacked_.front() >= 0 && attacked_.back() < num_vertices);
  }

  friend bool operator==(const Attack& a, const Attack& b) { return a.attacked_ == b.attacked_; }

 private:
  std::vector<Vertex> attacked_;
  int budget_ = 0;
};

inline std::string to_string(const Attack& u) {
  std::string s = "{";
  for (std::size_t k = 0; k < u.vertices().size(); ++k) {
    if (k) s += ",";
    s += std::to_string(u.vertices()[k]);
  }
  return s + "}";
}

/// w_e(x) = |P(x) ∩ V(e)|.
inline int exchange_weight(const Exchange& e, const std::set<Vertex>& initial_pairs) {
  return static_cast<int>(std::count_if(e.vertices.begin(), e.vertices.end(),
                                        [&](Vertex v) { return initial_pairs.count(v) > 0; }));
}

/// w_ij(x') = 1 iff j is an initially covered pair.
inline int arc_weight(Vertex /*src*/, Vertex dst, const std::set<Vertex>& initial_pairs) {
  return initial_pairs.count(dst) ? 1 : 0;
}

/// sub(d): the prefixes d^{->j} for every pair j on d.
inline std::vector<Exchange> subchains(const Exchange& chain) {
  std::vector<Exchange> out;
  for (std::size_t k = 1; k < chain.vertices.size(); ++k)
    out.push_back(make_chain({chain.vertices.begin(), chain.vertices.begin() + static_cast<std::ptrdiff_t>(k) + 1}));
  return out;
}

/// enf(x): initial cycles plus every pair-indexed prefix of every initial chain.
inline std::vector<Exchange> enforceable_set(const KepSolution& initial) {
  std::vector<Exchange> out;
  for (const auto& e : initial.exchanges()) {
    if (e.is_cycle()) {
      out.push_back(e);
    } else {
      auto subs = subchains(e);
      out.insert(out.end(), subs.begin(), subs.end());
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Longest prefix of `chain` with no attacked vertex; empty when it would not
/// contain a single arc.
inline std::vector<Vertex> attack_free_prefix(const Exchange& chain, const Attack& u) {
  std::vector<Vertex> prefix;
  for (Vertex v : chain.vertices) {
    if (u.contains(v)) break;
    prefix.push_back(v);
  }
  if (prefix.size() < 2) prefix.clear();
  return prefix;
}

/// Exchanges the fix-successful-exchanges policy keeps in every recourse
/// solution: non-attacked initial cycles and the longest attack-free prefix
/// of each initial chain.
inline std::vector<Exchange> enforced_exchanges(const KepSolution& initial, const Attack& u) {
  std::vector<Exchange> out;
  for (const auto& e : initial.exchanges()) {
    if (e.is_cycle()) {
      if (!u.hits(e)) out.push_back(e);
    } else {
      auto prefix = attack_free_prefix(e, u);
      if (!prefix.empty()) out.push_back(make_chain(std::move(prefix)));
    }
  }
  return out;
}

struct SurvivingStructures {
  /// E(u): pool indices of exchanges without attacked vertices.
  std::vector<int> surviving;
  /// I^j(u): for each vertex j, exchanges through j that would keep j in an
  /// enforced exchange if they were initial.
  std::vector<std::vector<int>> enforcing;
};

inline SurvivingStructures surviving_structures(const ExchangePool& pool, const Attack& u) {
  SurvivingStructures out;
  std::vector<char> alive(pool.size(), 0);
  for (int k = 0; k < pool.size(); ++k) {
    alive[k] = !u.hits(pool[k]);
    if (alive[k]) out.surviving.push_back(k);
  }
  out.enforcing.assign(pool.num_vertices(), {});
  for (int k = 0; k < pool.size(); ++k) {
    const Exchange& e = pool[k];
    for (Vertex j : e.vertices) {
      if (e.is_cycle()) {
        if (alive[k]) out.enforcing[j].push_back(k);
      } else if (!u.hits(subchain_to(e, j))) {
        out.enforcing[j].push_back(k);
      }
    }
  }
  return out;
}

/// |P(x) ∩ P(y)|. Throws when the recourse solution uses an attacked vertex.
inline int objective_value(const CompatibilityGraph& graph, const KepSolution& initial, const Attack& u,
                           const KepSolution& recourse) {
  for (const auto& e : recourse.exchanges())
    if (u.hits(e)) throw Error("recourse solution uses an attacked vertex");
  const auto a = initial.covered_pairs(graph);
  const auto b = recourse.covered_pairs(graph);
  return static_cast<int>(std::count_if(a.begin(), a.end(), [&](Vertex v) { return b.count(v) > 0; }));
}

/// Whether `recourse` is admissible for `initial` under attack `u` and the policy.
inline bool is_admissible_recourse(const KepSolution& initial, const Attack& u, const KepSolution& recourse,
                                   Policy policy) {
  if (!recourse.is_disjoint()) return false;
  for (const auto& e : recourse.exchanges())
    if (u.hits(e)) return false;
  if (policy == Policy::FullRecourse) return true;
  for (const auto& e : enforced_exchanges(initial, u)) {
    const auto& ex = recourse.exchanges();
    if (std::find(ex.begin(), ex.end(), e) == ex.end()) return false;
  }
  return true;
}

}  // namespace rkep
