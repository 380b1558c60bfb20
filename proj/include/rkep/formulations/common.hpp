#pragma once

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "rkep/graph.hpp"
#include "rkep/kep.hpp"
#include "rkep/milp/model.hpp"

namespace rkep {

enum class Encoding { CC, PICEF };

inline const char* to_string(Encoding e) { return e == Encoding::CC ? "cc" : "picef"; }

namespace detail {

inline std::string vertex_tag(const std::vector<Vertex>& vs) {
  std::string s;
  for (std::size_t k = 0; k < vs.size(); ++k) {
    if (k) s += "_";
    s += std::to_string(vs[k]);
  }
  return s;
}

inline void require_chains(const Instance& inst) {
  if (!inst.chains_enumerated)
    throw Error("the cycle-chain encoding needs an instance with enumerated chains");
}

inline void check_attack(const Instance& inst, const Attack& u) {
  if (!u.in_range(inst.num_vertices())) throw Error("attack references a vertex outside the graph");
}

inline void add_if_useful(milp::Model& m, std::vector<milp::Term> terms, milp::Relation rel, double rhs, const std::string& name) {
  // packing rows over at most one binary are implied by the bounds
  if (rel == milp::Relation::LessEqual && rhs >= 1.0 && terms.size() <= 1) {
    bool unit = terms.empty() || terms[0].coef <= 1.0;
    if (unit) return;
  }
  m.add_row(std::move(terms), rel, rhs, name);
}

}  // namespace detail

/// Lookup tables over the position-indexed arcs of an instance.
class PicefIndex {
 public:
  explicit PicefIndex(const Instance& inst) : arcs_(&inst.picef_arcs), max_chain_(inst.max_chain) {
    const int n = inst.num_vertices();
    in_.assign(n, std::vector<std::vector<int>>(max_chain_ + 2));
    out_.assign(n, std::vector<std::vector<int>>(max_chain_ + 2));
    for (int k = 0; k < static_cast<int>(arcs_->size()); ++k) {
      const PicefArc& a = (*arcs_)[k];
      in_[a.dst][a.pos].push_back(k);
      out_[a.src][a.pos].push_back(k);
      by_arc_[{a.src, a.dst}].push_back(k);
      lookup_[{a.src, a.dst, a.pos}] = k;
    }
  }

  const std::vector<PicefArc>& arcs() const { return *arcs_; }
  int size() const { return static_cast<int>(arcs_->size()); }
  int max_chain() const { return max_chain_; }

  const std::vector<int>& in(Vertex j, int pos) const { return in_[j][pos]; }
  const std::vector<int>& out(Vertex j, int pos) const { return out_[j][pos]; }

  std::vector<int> in_all(Vertex j) const {
    std::vector<int> r;
    for (const auto& v : in_[j]) r.insert(r.end(), v.begin(), v.end());
    return r;
  }
  std::vector<int> out_all(Vertex j) const {
    std::vector<int> r;
    for (const auto& v : out_[j]) r.insert(r.end(), v.begin(), v.end());
    return r;
  }

  /// Distinct arcs that carry at least one position, with their position indices.
  const std::map<std::pair<Vertex, Vertex>, std::vector<int>>& by_arc() const { return by_arc_; }

  int find(Vertex src, Vertex dst, int pos) const {
    auto it = lookup_.find({src, dst, pos});
    return it == lookup_.end() ? kNoIndex : it->second;
  }

 private:
  const std::vector<PicefArc>* arcs_;
  int max_chain_;
  std::vector<std::vector<std::vector<int>>> in_, out_;
  std::map<std::pair<Vertex, Vertex>, std::vector<int>> by_arc_;
  std::map<std::tuple<Vertex, Vertex, int>, int> lookup_;
};

/// Rebuilds chains from a set of selected arcs by walking forward from every
/// donor. Each vertex may have at most one selected successor.
inline std::vector<Exchange> assemble_chains(const CompatibilityGraph& graph,
                                             const std::vector<std::pair<Vertex, Vertex>>& arcs) {
  std::vector<Vertex> next(graph.num_vertices(), -1);
  std::vector<int> indeg(graph.num_vertices(), 0);
  for (const auto& [i, j] : arcs) {
    if (next[i] != -1 && next[i] != j) throw Error("selected arcs leave vertex " + std::to_string(i) + " twice");
    if (next[i] == j) continue;
    next[i] = j;
    if (++indeg[j] > 1) throw Error("selected arcs enter vertex " + std::to_string(j) + " twice");
  }
  std::vector<Exchange> chains;
  std::vector<char> seen(graph.num_vertices(), 0);
  for (Vertex n = graph.num_pairs(); n < graph.num_vertices(); ++n) {
    if (next[n] < 0) continue;
    std::vector<Vertex> path{n};
    seen[n] = 1;
    for (Vertex v = next[n]; v >= 0; v = next[v]) {
      if (seen[v]) throw Error("selected arcs revisit vertex " + std::to_string(v));
      seen[v] = 1;
      path.push_back(v);
    }
    chains.push_back(make_chain(std::move(path)));
  }
  for (const auto& [i, j] : arcs)
    if (!seen[i] || !seen[j]) throw Error("selected arc is not on a donor-rooted chain");
  return chains;
}

}  // namespace rkep
