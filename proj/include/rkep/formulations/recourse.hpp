#pragma once

// Recourse problem for a fixed initial solution and attack. The plain version
// returns an optimal recourse solution; the lifted version returns a full KEP
// solution on the whole graph whose non-attacked part is an optimal recourse
// solution and which otherwise packs as many exchanges as possible.

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "rkep/formulations/common.hpp"
#include "rkep/milp/branch_and_bound.hpp"

namespace rkep {

struct RecourseHandle {
  milp::Model model{milp::Sense::Maximize};
  Policy policy = Policy::FullRecourse;
  Encoding encoding = Encoding::CC;
  bool lifted = false;
  Attack attack;
  std::set<Vertex> initial_pairs;
  std::map<int, milp::VarId> y;  // pool index (all exchanges for CC, cycles otherwise)
  std::map<int, milp::VarId> psi_pos;                       // plain chain-edge: per position arc
  std::map<std::pair<Vertex, Vertex>, milp::VarId> psi_arc;  // lifted chain-edge: per arc
  std::map<int, milp::VarId> eta;                           // lifted chain-edge: per position arc
};

struct CutSolution {
  /// Solution whose interdiction cut gets added (full packing when lifted).
  KepSolution solution;
  /// Its non-attacked part: an optimal admissible recourse solution.
  KepSolution recourse;
  int recourse_value = 0;
};

namespace detail {

using milp::Relation;
using milp::Term;

// Position of each arc along the initial chains, and the arcs the policy keeps.
struct EnforcedArcs {
  std::vector<PicefArc> arcs;      // arcs of enforced chain prefixes with their positions
  std::set<Vertex> prefix_ends;    // last vertex of each enforced prefix
};

inline EnforcedArcs enforced_chain_arcs(const KepSolution& initial, const Attack& u) {
  EnforcedArcs out;
  for (const auto& e : enforced_exchanges(initial, u)) {
    if (!e.is_chain()) continue;
    for (std::size_t k = 0; k + 1 < e.vertices.size(); ++k)
      out.arcs.push_back({e.vertices[k], e.vertices[k + 1], static_cast<int>(k) + 1});
    out.prefix_ends.insert(e.vertices.back());
  }
  return out;
}

inline void build_recourse_cc(RecourseHandle& h, const KepSolution& initial, const Instance& inst) {
  auto& m = h.model;
  const auto& pool = inst.pool;
  const Attack& u = h.attack;
  const long nv = inst.num_vertices();
  for (int k = 0; k < pool.size(); ++k) {
    const bool alive = !u.hits(pool[k]);
    if (!alive && !h.lifted) continue;
    const double w = exchange_weight(pool[k], h.initial_pairs);
    const double obj = h.lifted ? (alive ? w * nv + 1 : 1.0) : w;
    h.y[k] = m.add_binary(obj, "y_" + std::to_string(k));
  }
  for (Vertex j = 0; j < inst.num_vertices(); ++j) {
    if (!h.lifted && u.contains(j)) continue;
    std::vector<Term> row;
    for (int k : pool.involving(j))
      if (auto it = h.y.find(k); it != h.y.end()) row.push_back({it->second, 1.0});
    add_if_useful(m, row, Relation::LessEqual, 1.0, "pack_" + std::to_string(j));
  }
  if (h.policy == Policy::FixSuccessfulExchanges) {
    for (const auto& e : enforced_exchanges(initial, u)) {
      const int k = pool.find(e);
      if (k == kNoIndex) throw Error("enforced exchange is missing from the pool");
      m.fix(h.y.at(k), 1.0);
    }
  }
}

inline void build_recourse_picef(RecourseHandle& h, const KepSolution& initial, const Instance& inst) {
  auto& m = h.model;
  const auto& pool = inst.pool;
  const PicefIndex idx(inst);
  const Attack& u = h.attack;
  const long nv = inst.num_vertices();
  const bool fse = h.policy == Policy::FixSuccessfulExchanges;
  const EnforcedArcs enforced = fse ? enforced_chain_arcs(initial, u) : EnforcedArcs{};

  for (int c = 0; c < pool.num_cycles(); ++c) {
    const bool alive = !u.hits(pool[c]);
    if (!alive && !h.lifted) continue;
    const double w = exchange_weight(pool[c], h.initial_pairs);
    h.y[c] = m.add_binary(h.lifted ? (alive ? w * nv + 1 : 1.0) : w, "y_" + std::to_string(c));
  }
  auto cycle_terms = [&](Vertex j, std::vector<Term>& row) {
    for (int c : pool.involving(j))
      if (auto it = h.y.find(c); it != h.y.end()) row.push_back({it->second, 1.0});
  };

  if (!h.lifted) {
    for (int k = 0; k < idx.size(); ++k) {
      const PicefArc& a = idx.arcs()[k];
      if (u.contains(a.src) || u.contains(a.dst)) continue;
      if (enforced.prefix_ends.count(a.src)) continue;  // no extension of enforced prefixes
      h.psi_pos[k] = m.add_binary(arc_weight(a.src, a.dst, h.initial_pairs),
                                  "psi_" + std::to_string(a.src) + "_" + std::to_string(a.dst) + "_" +
                                      std::to_string(a.pos));
    }
    auto psi = [&](const std::vector<int>& arcs, double coef, std::vector<Term>& row) {
      for (int k : arcs)
        if (auto it = h.psi_pos.find(k); it != h.psi_pos.end()) row.push_back({it->second, coef});
    };
    for (Vertex j = 0; j < inst.num_vertices(); ++j) {
      if (u.contains(j)) continue;
      std::vector<Term> row;
      if (inst.graph.is_pair(j)) {
        cycle_terms(j, row);
        psi(idx.in_all(j), 1.0, row);
      } else {
        psi(idx.out(j, 1), 1.0, row);
      }
      add_if_useful(m, row, Relation::LessEqual, 1.0, "pack_" + std::to_string(j));
      if (!inst.graph.is_pair(j)) continue;
      for (int l = 1; l < idx.max_chain(); ++l) {
        std::vector<Term> prec;
        psi(idx.out(j, l + 1), 1.0, prec);
        if (prec.empty()) continue;
        psi(idx.in(j, l), -1.0, prec);
        m.add_row(prec, Relation::LessEqual, 0.0, "prec_" + std::to_string(j) + "_" + std::to_string(l));
      }
    }
    for (const PicefArc& a : enforced.arcs) {
      const int k = idx.find(a.src, a.dst, a.pos);
      if (k == kNoIndex || !h.psi_pos.count(k)) throw Error("enforced chain arc has no position variable");
      m.fix(h.psi_pos.at(k), 1.0);
    }
  } else {
    for (int k = 0; k < idx.size(); ++k) {
      const PicefArc& a = idx.arcs()[k];
      if (enforced.prefix_ends.count(a.src)) continue;
      h.eta[k] = m.add_binary(1.0, "eta_" + std::to_string(a.src) + "_" + std::to_string(a.dst) + "_" +
                                       std::to_string(a.pos));
    }
    for (const auto& [arc, positions] : idx.by_arc()) {
      const auto [i, j] = arc;
      if (u.contains(i) || u.contains(j) || enforced.prefix_ends.count(i)) continue;
      const double w = arc_weight(i, j, h.initial_pairs);
      const double obj = inst.graph.is_ndd(i) ? w * nv + 1 : w * nv;
      const milp::VarId v =
          m.add_binary(obj, "psi_" + std::to_string(i) + "_" + std::to_string(j));
      h.psi_arc[arc] = v;
      std::vector<Term> ub{{v, 1.0}};
      for (int k : positions)
        if (auto it = h.eta.find(k); it != h.eta.end()) ub.push_back({it->second, -1.0});
      m.add_row(ub, Relation::LessEqual, 0.0, "psi_eta_" + std::to_string(i) + "_" + std::to_string(j));
    }
    auto eta = [&](const std::vector<int>& arcs, double coef, std::vector<Term>& row) {
      for (int k : arcs)
        if (auto it = h.eta.find(k); it != h.eta.end()) row.push_back({it->second, coef});
    };
    auto psi_in = [&](Vertex j, double coef, std::vector<Term>& row) {
      for (const auto& [arc, v] : h.psi_arc)
        if (arc.second == j) row.push_back({v, coef});
    };
    auto psi_out = [&](Vertex j, double coef, std::vector<Term>& row) {
      for (const auto& [arc, v] : h.psi_arc)
        if (arc.first == j) row.push_back({v, coef});
    };
    for (Vertex j = 0; j < inst.num_vertices(); ++j) {
      std::vector<Term> row;
      if (inst.graph.is_pair(j)) {
        cycle_terms(j, row);
        eta(idx.in_all(j), 1.0, row);
      } else {
        eta(idx.out(j, 1), 1.0, row);
      }
      add_if_useful(m, row, Relation::LessEqual, 1.0, "pack_" + std::to_string(j));
      if (!inst.graph.is_pair(j)) continue;
      for (int l = 1; l < idx.max_chain(); ++l) {
        std::vector<Term> prec;
        eta(idx.out(j, l + 1), 1.0, prec);
        if (prec.empty()) continue;
        eta(idx.in(j, l), -1.0, prec);
        m.add_row(prec, Relation::LessEqual, 0.0, "prec_" + std::to_string(j) + "_" + std::to_string(l));
      }
      std::vector<Term> pin;
      psi_in(j, 1.0, pin);
      add_if_useful(m, pin, Relation::LessEqual, 1.0, "psi_pack_" + std::to_string(j));
      std::vector<Term> pprec;
      psi_out(j, 1.0, pprec);
      if (pprec.empty()) continue;
      psi_in(j, -1.0, pprec);
      m.add_row(pprec, Relation::LessEqual, 0.0, "psi_prec_" + std::to_string(j));
    }
    for (Vertex j = inst.num_pairs(); j < inst.num_vertices(); ++j) {
      std::vector<Term> row;
      psi_out(j, 1.0, row);
      add_if_useful(m, row, Relation::LessEqual, 1.0, "psi_ndd_" + std::to_string(j));
    }
    for (const PicefArc& a : enforced.arcs) {
      auto it = h.psi_arc.find({a.src, a.dst});
      if (it == h.psi_arc.end()) throw Error("enforced chain arc has no recourse variable");
      m.fix(it->second, 1.0);
    }
  }
  if (fse) {
    for (const auto& e : enforced_exchanges(initial, u)) {
      if (!e.is_cycle()) continue;
      m.fix(h.y.at(pool.find(e)), 1.0);
    }
  }
}

}  // namespace detail

inline RecourseHandle build_recourse(const KepSolution& initial, const Attack& u, const Instance& inst, Policy policy,
                                     Encoding encoding, bool lifted) {
  detail::check_attack(inst, u);
  if (encoding == Encoding::CC) detail::require_chains(inst);
  RecourseHandle h;
  h.policy = policy;
  h.encoding = encoding;
  h.lifted = lifted;
  h.attack = u;
  h.initial_pairs = initial.covered_pairs(inst.graph);
  h.model.set_integral_objective(true);
  if (encoding == Encoding::CC) detail::build_recourse_cc(h, initial, inst);
  else detail::build_recourse_picef(h, initial, inst);
  return h;
}

inline CutSolution extract_cut_solution(const RecourseHandle& h, const Instance& inst,
                                        const milp::SolveOutcome& out) {
  if (out.status != milp::SolveStatus::Optimal) throw Error("recourse outcome is not optimal");
  const auto& pool = inst.pool;
  CutSolution cs;
  for (const auto& [k, v] : h.y)
    if (out.is_set(v)) cs.solution.add(pool[k]);
  if (h.encoding == Encoding::PICEF) {
    std::vector<std::pair<Vertex, Vertex>> arcs;
    if (h.lifted) {
      for (const auto& [k, v] : h.eta)
        if (out.is_set(v)) arcs.emplace_back(inst.picef_arcs[k].src, inst.picef_arcs[k].dst);
    } else {
      for (const auto& [k, v] : h.psi_pos)
        if (out.is_set(v)) arcs.emplace_back(inst.picef_arcs[k].src, inst.picef_arcs[k].dst);
    }
    for (auto& d : assemble_chains(inst.graph, arcs)) cs.solution.add(std::move(d));
  }
  if (!cs.solution.is_disjoint()) throw Error("recourse assignment is not a packing");

  // recourse value from the recourse variables themselves
  int value = 0;
  for (const auto& [k, v] : h.y)
    if (out.is_set(v) && !h.attack.hits(pool[k])) value += exchange_weight(pool[k], h.initial_pairs);
  std::vector<std::pair<Vertex, Vertex>> rec_arcs;
  for (const auto& [k, v] : h.psi_pos)
    if (out.is_set(v)) {
      value += arc_weight(inst.picef_arcs[k].src, inst.picef_arcs[k].dst, h.initial_pairs);
      rec_arcs.emplace_back(inst.picef_arcs[k].src, inst.picef_arcs[k].dst);
    }
  for (const auto& [arc, v] : h.psi_arc)
    if (out.is_set(v)) {
      value += arc_weight(arc.first, arc.second, h.initial_pairs);
      rec_arcs.emplace_back(arc);
    }
  cs.recourse_value = value;

  if (h.encoding == Encoding::CC) {
    for (const auto& e : cs.solution.exchanges())
      if (!h.attack.hits(e)) cs.recourse.add(e);
  } else {
    for (const auto& e : cs.solution.cycles())
      if (!h.attack.hits(e)) cs.recourse.add(e);
    for (auto& d : assemble_chains(inst.graph, rec_arcs)) cs.recourse.add(std::move(d));
  }
  return cs;
}

}  // namespace rkep
