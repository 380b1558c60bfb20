#pragma once

// Attacker subproblem for a fixed initial solution: choose an attack that
// minimizes Z, where each registered solution S contributes the interdiction
// cut Z >= (weight of the parts of S that survive the attack).

#include <map>
#include <set>
#include <vector>

#include "rkep/formulations/common.hpp"
#include "rkep/milp/branch_and_bound.hpp"

namespace rkep {

struct SubproblemHandle {
  milp::Model model{milp::Sense::Minimize};
  Policy policy = Policy::FullRecourse;
  Encoding encoding = Encoding::CC;
  KepSolution initial;
  std::set<Vertex> initial_pairs;
  std::vector<Exchange> enforceable;
  std::vector<milp::VarId> u;  // per vertex
  std::vector<milp::VarId> t;  // per vertex, chain-edge encoding under fse only
  milp::VarId Z;
  /// CC: every exchange with a z variable; chain-edge: cycles only.
  std::map<Exchange, milp::VarId> z;
  /// Chain-indexed arc variables, one vector (in arc order) per chain.
  std::map<std::vector<Vertex>, std::vector<milp::VarId>> zeta;
  std::vector<KepSolution> cuts;
};

namespace detail {

using milp::Relation;
using milp::Term;

inline bool is_enforceable(const SubproblemHandle& h, const Exchange& e) {
  return std::binary_search(h.enforceable.begin(), h.enforceable.end(), e);
}

inline bool overlaps(const Exchange& a, const Exchange& b) {
  for (Vertex v : a.vertices)
    if (b.contains(v)) return true;
  return false;
}

// z_e for the cycle-chain encoding (all exchanges) or the chain-edge encoding (cycles).
inline milp::VarId subproblem_z(SubproblemHandle& h, const Exchange& e) {
  if (auto it = h.z.find(e); it != h.z.end()) return it->second;
  auto& m = h.model;
  const std::string tag = (e.is_cycle() ? "c_" : "d_") + vertex_tag(e.vertices);
  const milp::VarId z = m.add_continuous(0.0, 1.0, 0.0, "z_" + tag);
  h.z.emplace(e, z);
  const bool fse = h.policy == Policy::FixSuccessfulExchanges;
  const bool enf = fse && is_enforceable(h, e);

  std::vector<Term> lb{{z, 1.0}};
  for (Vertex j : e.vertices) lb.push_back({h.u[j], 1.0});
  if (fse && !enf) {
    if (h.encoding == Encoding::CC) {
      for (const Exchange& f : h.enforceable)
        if (overlaps(f, e)) lb.push_back({h.z.at(f), 1.0});
    } else {
      for (Vertex j : e.vertices) lb.push_back({h.t[j], 1.0});
    }
  }
  m.add_row(lb, Relation::GreaterEqual, 1.0, "zlb_" + tag);

  if (fse && (h.encoding == Encoding::CC || enf))
    for (Vertex j : e.vertices)
      m.add_row({{z, 1.0}, {h.u[j], 1.0}}, Relation::LessEqual, 1.0, "zub_" + tag + "_" + std::to_string(j));
  if (enf && h.encoding == Encoding::PICEF) {
    std::vector<Term> cov;
    for (Vertex j : e.vertices) cov.push_back({h.t[j], 1.0});
    cov.push_back({z, -static_cast<double>(e.vertices.size())});
    m.add_row(cov, Relation::Equal, 0.0, "tcyc_" + tag);
  }
  return z;
}

// zeta^d for a chain d (chain-edge encoding).
inline const std::vector<milp::VarId>& subproblem_zeta(SubproblemHandle& h, const Exchange& d) {
  if (auto it = h.zeta.find(d.vertices); it != h.zeta.end()) return it->second;
  auto& m = h.model;
  const bool fse = h.policy == Policy::FixSuccessfulExchanges;
  const bool enf = fse && is_enforceable(h, d);
  const std::string tag = vertex_tag(d.vertices);
  std::vector<milp::VarId> vars;
  for (std::size_t k = 0; k + 1 < d.vertices.size(); ++k) {
    const Vertex i = d.vertices[k], j = d.vertices[k + 1];
    const std::string at = tag + "_" + std::to_string(i) + "_" + std::to_string(j);
    const milp::VarId zeta = m.add_continuous(0.0, 1.0, 0.0, "zeta_" + at);
    vars.push_back(zeta);
    // vertices of the prefix ending at j
    std::vector<Term> lb{{zeta, 1.0}};
    for (std::size_t q = 0; q <= k + 1; ++q) {
      lb.push_back({h.u[d.vertices[q]], 1.0});
      if (fse && !enf) lb.push_back({h.t[d.vertices[q]], 1.0});
    }
    m.add_row(lb, Relation::GreaterEqual, 1.0, "zetalb_" + at);
    if (enf) {
      for (std::size_t q = 0; q <= k + 1; ++q)
        m.add_row({{zeta, 1.0}, {h.u[d.vertices[q]], 1.0}}, Relation::LessEqual, 1.0,
                  "zetaub_" + at + "_" + std::to_string(d.vertices[q]));
      m.add_row({{h.t[j], 1.0}, {zeta, -1.0}}, Relation::Equal, 0.0, "tarc_" + at);
      if (k == 0) m.add_row({{h.t[i], 1.0}, {zeta, -1.0}}, Relation::Equal, 0.0, "tndd_" + at);
    }
  }
  return h.zeta.emplace(d.vertices, std::move(vars)).first->second;
}

}  // namespace detail

inline SubproblemHandle build_subproblem(const KepSolution& initial, const Instance& inst, Policy policy,
                                         Encoding encoding, int budget) {
  using milp::Relation;
  using milp::Term;
  if (budget < 0) throw Error("attack budget must be non-negative");
  if (!initial.is_disjoint()) throw Error("initial solution is not a packing");
  if (encoding == Encoding::CC) detail::require_chains(inst);
  SubproblemHandle h;
  h.policy = policy;
  h.encoding = encoding;
  h.initial = initial;
  h.initial_pairs = initial.covered_pairs(inst.graph);
  h.model.set_integral_objective(true);
  if (policy == Policy::FixSuccessfulExchanges) h.enforceable = enforceable_set(initial);

  h.Z = h.model.add_continuous(0.0, static_cast<double>(h.initial_pairs.size()), 1.0, "Z");
  std::vector<Term> budget_row;
  for (Vertex j = 0; j < inst.num_vertices(); ++j) {
    h.u.push_back(h.model.add_binary(0.0, "u_" + std::to_string(j)));
    budget_row.push_back({h.u.back(), 1.0});
  }
  h.model.add_row(budget_row, Relation::LessEqual, budget, "budget");

  if (policy == Policy::FixSuccessfulExchanges) {
    if (encoding == Encoding::PICEF) {
      std::set<Vertex> involved;
      for (const auto& e : initial.exchanges()) involved.insert(e.vertices.begin(), e.vertices.end());
      for (Vertex j = 0; j < inst.num_vertices(); ++j) {
        const double ub = involved.count(j) ? 1.0 : 0.0;
        h.t.push_back(h.model.add_continuous(0.0, ub, 0.0, "t_" + std::to_string(j)));
      }
      for (const auto& e : initial.exchanges()) {
        if (e.is_cycle()) detail::subproblem_z(h, e);
        else detail::subproblem_zeta(h, e);
      }
    } else {
      for (const auto& e : h.enforceable) detail::subproblem_z(h, e);
    }
  }
  return h;
}

/// Registers S and adds its interdiction cut.
inline milp::RowId add_interdiction_cut(SubproblemHandle& h, const KepSolution& S) {
  using milp::Term;
  if (!S.is_disjoint()) throw Error("interdiction cut solution has overlapping exchanges");
  std::vector<Term> row{{h.Z, 1.0}};
  for (const auto& e : S.exchanges()) {
    if (h.encoding == Encoding::PICEF && e.is_chain()) {
      const auto& vars = detail::subproblem_zeta(h, e);
      for (std::size_t k = 0; k + 1 < e.vertices.size(); ++k) {
        const int w = h.initial_pairs.count(e.vertices[k + 1]) ? 1 : 0;
        if (w) row.push_back({vars[k], -static_cast<double>(w)});
      }
    } else {
      const int w = exchange_weight(e, h.initial_pairs);
      const milp::VarId z = detail::subproblem_z(h, e);
      if (w) row.push_back({z, -static_cast<double>(w)});
    }
  }
  h.cuts.push_back(S);
  return h.model.add_row(row, milp::Relation::GreaterEqual, 0.0, "cut_" + std::to_string(h.cuts.size()));
}

inline Attack extract_attack(const SubproblemHandle& h, const milp::SolveOutcome& out, int budget) {
  if (!out.has_solution) throw Error("subproblem outcome carries no assignment");
  std::vector<Vertex> attacked;
  for (Vertex j = 0; j < static_cast<int>(h.u.size()); ++j)
    if (out.is_set(h.u[j])) attacked.push_back(j);
  return Attack(std::move(attacked), budget);
}

}  // namespace rkep
