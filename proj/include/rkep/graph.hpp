#pragma once

// Compatibility graphs and the exchange structures built on top of them:
// cycles over pairs, chains rooted at non-directed donors, and the
// position-indexed arcs used by the chain-edge encoding.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace rkep {

using Vertex = int;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Arc {
  Vertex src = 0;
  Vertex dst = 0;
  auto operator<=>(const Arc&) const = default;
};

/// Directed graph over pairs P = {0..num_pairs-1} and non-directed donors
/// N = {num_pairs..num_pairs+num_ndds-1}. Arcs are kept sorted.
class CompatibilityGraph {
 public:
  CompatibilityGraph() = default;

  CompatibilityGraph(int num_pairs, int num_ndds, std::vector<Arc> arcs)
      : num_pairs_(num_pairs), num_ndds_(num_ndds), arcs_(std::move(arcs)) {
    if (num_pairs < 0 || num_ndds < 0) throw Error("negative vertex count");
    std::sort(arcs_.begin(), arcs_.end());
    const int n = num_vertices();
    for (std::size_t k = 0; k < arcs_.size(); ++k) {
      const Arc& a = arcs_[k];
      if (a.src < 0 || a.src >= n || a.dst < 0 || a.dst >= n)
        throw Error("arc (" + std::to_string(a.src) + "," + std::to_string(a.dst) +
                    ") has an out-of-range vertex");
      if (a.src == a.dst) throw Error("self-loop on vertex " + std::to_string(a.src));
      if (!is_pair(a.dst))
        throw Error("arc (" + std::to_string(a.src) + "," + std::to_string(a.dst) +
                    ") enters a non-directed donor");
      if (k > 0 && arcs_[k - 1] == a)
        throw Error("duplicate arc (" + std::to_string(a.src) + "," + std::to_string(a.dst) + ")");
    }
    succ_.assign(n, {});
    pred_.assign(n, {});
    for (const Arc& a : arcs_) {
      succ_[a.src].push_back(a.dst);
      pred_[a.dst].push_back(a.src);
    }
    for (auto& p : pred_) std::sort(p.begin(), p.end());
  }

  int num_pairs() const { return num_pairs_; }
  int num_ndds() const { return num_ndds_; }
  int num_vertices() const { return num_pairs_ + num_ndds_; }
  bool is_pair(Vertex v) const { return v >= 0 && v < num_pairs_; }
  bool is_ndd(Vertex v) const { return v >= num_pairs_ && v < num_vertices(); }

  std::span<const Arc> arcs() const { return arcs_; }
  std::span<const Vertex> successors(Vertex v) const { return succ_[v]; }
  std::span<const Vertex> predecessors(Vertex v) const { return pred_[v]; }

  bool has_arc(Vertex src, Vertex dst) const {
    if (src < 0 || src >= num_vertices()) return false;
    return std::binary_search(succ_[src].begin(), succ_[src].end(), dst);
  }

  friend bool operator==(const CompatibilityGraph& a, const CompatibilityGraph& b) {
    return a.num_pairs_ == b.num_pairs_ && a.num_ndds_ == b.num_ndds_ && a.arcs_ == b.arcs_;
  }

 private:
  int num_pairs_ = 0;
  int num_ndds_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::vector<Vertex>> succ_;
  std::vector<std::vector<Vertex>> pred_;
};

enum class ExchangeKind { Cycle, Chain };

inline constexpr int kNoIndex = -1;

/// A cycle (vertices in order, closing arc implied) or a chain (vertices[0]
/// is the donor). `index` is the position in the owning ExchangePool, or
/// kNoIndex for exchanges built outside a pool.
struct Exchange {
  ExchangeKind kind = ExchangeKind::Cycle;
  std::vector<Vertex> vertices;
  int index = kNoIndex;

  bool is_cycle() const { return kind == ExchangeKind::Cycle; }
  bool is_chain() const { return kind == ExchangeKind::Chain; }

  int num_arcs() const {
    const int n = static_cast<int>(vertices.size());
    return is_cycle() ? n : n - 1;
  }

  std::vector<Arc> arcs() const {
    std::vector<Arc> out;
    for (std::size_t k = 0; k + 1 < vertices.size(); ++k) out.push_back({vertices[k], vertices[k + 1]});
    if (is_cycle() && !vertices.empty()) out.push_back({vertices.back(), vertices.front()});
    return out;
  }

  bool contains(Vertex v) const {
    return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
  }

  // Identity ignores the pool index.
  friend bool operator==(const Exchange& a, const Exchange& b) {
    return a.kind == b.kind && a.vertices == b.vertices;
  }
  friend bool operator<(const Exchange& a, const Exchange& b) {
    return std::tie(a.kind, a.vertices) < std::tie(b.kind, b.vertices);
  }
};

inline Exchange make_cycle(std::vector<Vertex> vertices, int index = kNoIndex) {
  return Exchange{ExchangeKind::Cycle, std::move(vertices), index};
}
inline Exchange make_chain(std::vector<Vertex> vertices, int index = kNoIndex) {
  return Exchange{ExchangeKind::Chain, std::move(vertices), index};
}

/// Checks the structural invariants of an exchange against `graph`.
inline bool is_valid_exchange(const CompatibilityGraph& graph, const Exchange& e, int max_cycle,
                              int max_chain) {
  const auto& vs = e.vertices;
  for (Vertex v : vs)
    if (v < 0 || v >= graph.num_vertices()) return false;
  std::vector<Vertex> sorted = vs;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  if (e.is_cycle()) {
    if (vs.size() < 2 || static_cast<int>(vs.size()) > max_cycle) return false;
    if (!std::all_of(vs.begin(), vs.end(), [&](Vertex v) { return graph.is_pair(v); })) return false;
  } else {
    if (vs.size() < 2 || e.num_arcs() > max_chain) return false;
    if (!graph.is_ndd(vs.front())) return false;
    if (!std::all_of(vs.begin() + 1, vs.end(), [&](Vertex v) { return graph.is_pair(v); })) return false;
  }
  for (const Arc& a : e.arcs())
    if (!graph.has_arc(a.src, a.dst)) return false;
  return true;
}

namespace detail {

inline bool shorter_then_lex(const Exchange& a, const Exchange& b) {
  if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
  return a.vertices < b.vertices;
}

}  // namespace detail

/// All simple cycles through pairs with 2..max_cycle arcs. Each cycle is
/// rotated so that its smallest vertex comes first; the list is ordered by
/// length, then lexicographically.
inline std::vector<Exchange> enumerate_cycles(const CompatibilityGraph& graph, int max_cycle) {
  std::vector<Exchange> out;
  if (max_cycle < 2) return out;
  std::vector<Vertex> path;
  std::vector<char> on_path(graph.num_vertices(), 0);

  auto extend = [&](auto&& self, Vertex start) -> void {
    const Vertex last = path.back();
    for (Vertex next : graph.successors(last)) {
      if (next == start && path.size() >= 2) {
        out.push_back(make_cycle(path));
        continue;
      }
      if (next <= start || !graph.is_pair(next) || on_path[next]) continue;
      if (static_cast<int>(path.size()) >= max_cycle) continue;
      path.push_back(next);
      on_path[next] = 1;
      self(self, start);
      on_path[next] = 0;
      path.pop_back();
    }
  };

  for (Vertex s = 0; s < graph.num_pairs(); ++s) {
    path.assign(1, s);
    on_path[s] = 1;
    extend(extend, s);
    on_path[s] = 0;
  }
  std::sort(out.begin(), out.end(), detail::shorter_then_lex);
  return out;
}

/// All simple paths that start at a non-directed donor and have 1..max_chain
/// arcs, ordered by arc count, then lexicographically.
inline std::vector<Exchange> enumerate_chains(const CompatibilityGraph& graph, int max_chain) {
  std::vector<Exchange> out;
  if (max_chain < 1) return out;
  std::vector<Vertex> path;
  std::vector<char> on_path(graph.num_vertices(), 0);

  auto extend = [&](auto&& self) -> void {
    for (Vertex next : graph.successors(path.back())) {
      if (on_path[next]) continue;
      path.push_back(next);
      on_path[next] = 1;
      out.push_back(make_chain(path));
      if (static_cast<int>(path.size()) - 1 < max_chain) self(self);
      on_path[next] = 0;
      path.pop_back();
    }
  };

  for (Vertex n = graph.num_pairs(); n < graph.num_vertices(); ++n) {
    path.assign(1, n);
    on_path[n] = 1;
    extend(extend);
    on_path[n] = 0;
  }
  std::sort(out.begin(), out.end(), detail::shorter_then_lex);
  return out;
}

/// Arc (src,dst) used at chain position `pos` (1 for arcs leaving a donor).
struct PicefArc {
  Vertex src = 0;
  Vertex dst = 0;
  int pos = 1;
  auto operator<=>(const PicefArc&) const = default;
};

/// Triples (i,j,l) such that some donor-rooted simple path with l-1 arcs ends
/// at i without visiting j. Ordered by position, then by arc.
inline std::vector<PicefArc> picef_positions(const CompatibilityGraph& graph, int max_chain) {
  std::vector<PicefArc> out;
  if (max_chain < 1) return out;
  std::vector<Vertex> path;
  std::vector<char> on_path(graph.num_vertices(), 0);

  auto extend = [&](auto&& self) -> void {
    const int pos = static_cast<int>(path.size());  // arcs so far + 1
    const Vertex last = path.back();
    for (Vertex next : graph.successors(last)) {
      if (on_path[next]) continue;
      out.push_back({last, next, pos});
      if (pos < max_chain) {
        path.push_back(next);
        on_path[next] = 1;
        self(self);
        on_path[next] = 0;
        path.pop_back();
      }
    }
  };

  for (Vertex n = graph.num_pairs(); n < graph.num_vertices(); ++n) {
    path.assign(1, n);
    on_path[n] = 1;
    extend(extend);
    on_path[n] = 0;
  }
  std::sort(out.begin(), out.end(), [](const PicefArc& a, const PicefArc& b) {
    return std::tie(a.pos, a.src, a.dst) < std::tie(b.pos, b.src, b.dst);
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Smallest non-empty prefix of `chain` containing `j`: the first arc when j
/// is the donor, otherwise the prefix ending at j.
inline Exchange subchain_to(const Exchange& chain, Vertex j) {
  if (!chain.is_chain()) throw Error("subchain_to requires a chain");
  const auto it = std::find(chain.vertices.begin(), chain.vertices.end(), j);
  if (it == chain.vertices.end()) throw Error("vertex " + std::to_string(j) + " is not on the chain");
  std::size_t len = static_cast<std::size_t>(it - chain.vertices.begin()) + 1;
  if (len == 1) len = 2;
  return make_chain({chain.vertices.begin(), chain.vertices.begin() + static_cast<std::ptrdiff_t>(len)});
}

/// Cycles followed by chains; `per_vertex[j]` lists the exchanges involving j.
class ExchangePool {
 public:
  ExchangePool() = default;

  ExchangePool(int num_vertices, std::vector<Exchange> cycles, std::vector<Exchange> chains)
      : num_cycles_(static_cast<int>(cycles.size())), per_vertex_(num_vertices) {
    all_.reserve(cycles.size() + chains.size());
    for (auto& c : cycles) all_.push_back(std::move(c));
    for (auto& d : chains) all_.push_back(std::move(d));
    for (int k = 0; k < static_cast<int>(all_.size()); ++k) {
      all_[k].index = k;
      for (Vertex v : all_[k].vertices) per_vertex_[v].push_back(k);
      lookup_.emplace(key(all_[k]), k);
    }
  }

  int size() const { return static_cast<int>(all_.size()); }
  int num_cycles() const { return num_cycles_; }
  int num_chains() const { return size() - num_cycles_; }
  int num_vertices() const { return static_cast<int>(per_vertex_.size()); }
  const Exchange& operator[](int k) const { return all_[k]; }
  std::span<const Exchange> all() const { return all_; }
  std::span<const Exchange> cycles() const { return std::span(all_).first(num_cycles_); }
  std::span<const Exchange> chains() const { return std::span(all_).subspan(num_cycles_); }
  std::span<const int> involving(Vertex v) const { return per_vertex_[v]; }

  /// Pool index of an exchange with the same kind and vertex order, or kNoIndex.
  int find(const Exchange& e) const {
    const auto it = lookup_.find(key(e));
    return it == lookup_.end() ? kNoIndex : it->second;
  }

 private:
  static std::pair<int, std::vector<Vertex>> key(const Exchange& e) {
    return {static_cast<int>(e.kind), e.vertices};
  }

  int num_cycles_ = 0;
  std::vector<Exchange> all_;
  std::vector<std::vector<int>> per_vertex_;
  std::map<std::pair<int, std::vector<Vertex>>, int> lookup_;
};

/// A graph together with its length limits and the enumerated structures.
/// Chains are only enumerated when requested; the chain-edge encoding works
/// from `picef_arcs` instead.
struct Instance {
  CompatibilityGraph graph;
  int max_cycle = 3;
  int max_chain = 0;
  ExchangePool pool;
  std::vector<PicefArc> picef_arcs;
  bool chains_enumerated = true;

  int num_vertices() const { return graph.num_vertices(); }
  int num_pairs() const { return graph.num_pairs(); }
};

inline Instance make_instance(CompatibilityGraph graph, int max_cycle, int max_chain,
                              bool enumerate_all_chains = true) {
  if (max_chain < 0) throw Error("maximum chain length must be non-negative");
  Instance inst;
  inst.max_cycle = max_cycle;
  inst.max_chain = max_chain;
  inst.chains_enumerated = enumerate_all_chains;
  auto cycles = enumerate_cycles(graph, max_cycle);
  auto chains = enumerate_all_chains ? enumerate_chains(graph, max_chain) : std::vector<Exchange>{};
  inst.pool = ExchangePool(graph.num_vertices(), std::move(cycles), std::move(chains));
  inst.picef_arcs = picef_positions(graph, max_chain);
  inst.graph = std::move(graph);
  return inst;
}

}  // namespace rkep
