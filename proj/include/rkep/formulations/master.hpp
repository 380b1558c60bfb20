#pragma once

// Restricted master problem: choose an initial solution maximizing the worst
// case over a finite list of attacks, with one recourse block per attack.

#include <map>
#include <utility>
#include <vector>

#include "rkep/formulations/common.hpp"
#include "rkep/milp/branch_and_bound.hpp"

namespace rkep {

struct MasterBlock {
  Attack attack;
  std::vector<milp::VarId> z;                        // per pair
  std::map<int, milp::VarId> y;                      // pool index -> recourse exchange/cycle
  std::map<int, milp::VarId> psi;                    // picef arc index -> recourse arc
  std::map<std::pair<Vertex, Vertex>, milp::VarId> beta;  // enforced initial chain arcs
};

struct MasterHandle {
  milp::Model model{milp::Sense::Maximize};
  Policy policy = Policy::FullRecourse;
  Encoding encoding = Encoding::CC;
  milp::VarId Z;
  std::vector<milp::VarId> x;   // CC: per pool exchange; PICEF: per cycle
  std::vector<milp::VarId> xi;  // PICEF: per position-indexed arc
  std::vector<MasterBlock> blocks;
};

namespace detail {

using milp::Relation;
using milp::Term;

inline void extend_master_cc(MasterHandle& h, const Instance& inst, MasterBlock& b) {
  auto& m = h.model;
  const auto& pool = inst.pool;
  const Attack& u = b.attack;
  const std::string tag = "u" + std::to_string(h.blocks.size());
  const auto surv = surviving_structures(pool, u);
  std::vector<char> alive(pool.size(), 0);
  for (int k : surv.surviving) {
    alive[k] = 1;
    b.y[k] = m.add_binary(0.0, "y_" + tag + "_" + std::to_string(k));
  }
  std::vector<Term> zsum{{h.Z, 1.0}};
  for (Vertex j = 0; j < inst.num_pairs(); ++j) {
    b.z.push_back(m.add_continuous(0.0, 1.0, 0.0, "z_" + tag + "_" + std::to_string(j)));
    zsum.push_back({b.z.back(), -1.0});
  }
  m.add_row(zsum, Relation::LessEqual, 0.0, "worst_" + tag);

  for (Vertex j = 0; j < inst.num_vertices(); ++j) {
    std::vector<Term> cover;  // recourse coverage of j
    if (h.policy == Policy::FixSuccessfulExchanges)
      for (int k : surv.enforcing[j]) cover.push_back({h.x[k], 1.0});
    for (int k : pool.involving(j))
      if (alive[k]) cover.push_back({b.y[k], 1.0});

    if (inst.graph.is_pair(j)) {
      std::vector<Term> init{{b.z[j], 1.0}};
      for (int k : pool.involving(j)) init.push_back({h.x[k], -1.0});
      m.add_row(init, Relation::LessEqual, 0.0, "zinit_" + tag + "_" + std::to_string(j));
      std::vector<Term> rec{{b.z[j], 1.0}};
      for (const Term& t : cover) rec.push_back({t.var, -1.0});
      m.add_row(rec, Relation::LessEqual, 0.0, "zrec_" + tag + "_" + std::to_string(j));
    }
    if (!u.contains(j))
      add_if_useful(m, cover, Relation::LessEqual, 1.0, "rpack_" + tag + "_" + std::to_string(j));
  }
}

inline void extend_master_picef(MasterHandle& h, const Instance& inst, MasterBlock& b) {
  auto& m = h.model;
  const auto& pool = inst.pool;
  const PicefIndex idx(inst);
  const Attack& u = b.attack;
  const bool fse = h.policy == Policy::FixSuccessfulExchanges;
  const std::string tag = "u" + std::to_string(h.blocks.size());

  std::vector<char> cycle_alive(pool.num_cycles(), 0);
  for (int c = 0; c < pool.num_cycles(); ++c) {
    if (u.hits(pool[c])) continue;
    cycle_alive[c] = 1;
    b.y[c] = m.add_binary(0.0, "y_" + tag + "_" + std::to_string(c));
  }
  for (int k = 0; k < idx.size(); ++k) {
    const PicefArc& a = idx.arcs()[k];
    if (u.contains(a.src) || u.contains(a.dst)) continue;
    b.psi[k] = m.add_binary(0.0, "psi_" + tag + "_" + std::to_string(a.src) + "_" + std::to_string(a.dst) + "_" +
                                     std::to_string(a.pos));
  }
  auto psi_terms = [&](const std::vector<int>& arcs, double coef, std::vector<Term>& out) {
    for (int k : arcs) {
      auto it = b.psi.find(k);
      if (it != b.psi.end()) out.push_back({it->second, coef});
    }
  };

  if (fse) {
    for (const auto& [arc, positions] : idx.by_arc()) {
      if (u.contains(arc.first) || u.contains(arc.second)) continue;
      b.beta[arc] = m.add_binary(
          0.0, "beta_" + tag + "_" + std::to_string(arc.first) + "_" + std::to_string(arc.second));
    }
    auto beta_in = [&](Vertex i, double coef, std::vector<Term>& out) {
      for (const auto& [arc, var] : b.beta)
        if (arc.second == i) out.push_back({var, coef});
    };
    auto beta_out = [&](Vertex i, double coef, std::vector<Term>& out) {
      for (const auto& [arc, var] : b.beta)
        if (arc.first == i) out.push_back({var, coef});
    };
    for (const auto& [arc, var] : b.beta) {
      const auto& [i, j] = arc;
      const std::string at = tag + "_" + std::to_string(i) + "_" + std::to_string(j);
      std::vector<Term> ub{{var, 1.0}};
      for (int k : idx.by_arc().at(arc)) ub.push_back({h.xi[k], -1.0});
      m.add_row(ub, Relation::LessEqual, 0.0, "beta_init_" + at);
      if (inst.graph.is_ndd(i)) {
        // u_i = u_j = 0 here, so the bound reads beta >= xi_{ij,1}
        m.add_row({{var, 1.0}, {h.xi[idx.find(i, j, 1)], -1.0}}, Relation::GreaterEqual, 0.0, "beta_ndd_" + at);
      } else {
        std::vector<Term> lb{{var, 1.0}};
        for (int k : idx.by_arc().at(arc)) lb.push_back({h.xi[k], -1.0});
        beta_in(i, -1.0, lb);
        m.add_row(lb, Relation::GreaterEqual, -1.0, "beta_pair_" + at);
      }
    }
    for (Vertex i = 0; i < inst.num_pairs(); ++i) {
      std::vector<Term> prec;
      beta_out(i, 1.0, prec);
      if (prec.empty()) continue;
      beta_in(i, -1.0, prec);
      m.add_row(prec, Relation::LessEqual, 0.0, "beta_prec_" + tag + "_" + std::to_string(i));
    }

    std::vector<Term> zsum{{h.Z, 1.0}};
    for (Vertex j = 0; j < inst.num_pairs(); ++j) {
      b.z.push_back(m.add_continuous(0.0, 1.0, 0.0, "z_" + tag + "_" + std::to_string(j)));
      zsum.push_back({b.z.back(), -1.0});
    }
    m.add_row(zsum, Relation::LessEqual, 0.0, "worst_" + tag);
    for (Vertex j = 0; j < inst.num_vertices(); ++j) {
      std::vector<Term> cover;
      if (inst.graph.is_pair(j)) {
        for (int c : pool.involving(j))
          if (c < pool.num_cycles() && cycle_alive[c]) cover.push_back({h.x[c], 1.0});
        beta_in(j, 1.0, cover);
        for (int c : pool.involving(j))
          if (c < pool.num_cycles() && cycle_alive[c]) cover.push_back({b.y[c], 1.0});
        psi_terms(idx.in_all(j), 1.0, cover);

        std::vector<Term> init{{b.z[j], 1.0}};
        for (int c : pool.involving(j))
          if (c < pool.num_cycles()) init.push_back({h.x[c], -1.0});
        for (int k : idx.in_all(j)) init.push_back({h.xi[k], -1.0});
        m.add_row(init, Relation::LessEqual, 0.0, "zinit_" + tag + "_" + std::to_string(j));
        std::vector<Term> rec{{b.z[j], 1.0}};
        for (const Term& t : cover) rec.push_back({t.var, -1.0});
        m.add_row(rec, Relation::LessEqual, 0.0, "zrec_" + tag + "_" + std::to_string(j));
      } else {
        beta_out(j, 1.0, cover);
        psi_terms(idx.out(j, 1), 1.0, cover);
      }
      if (!u.contains(j))
        add_if_useful(m, cover, Relation::LessEqual, 1.0, "rpack_" + tag + "_" + std::to_string(j));
    }
  } else {
    std::vector<Term> zsum{{h.Z, 1.0}};
    for (Vertex j = 0; j < inst.num_pairs(); ++j) {
      b.z.push_back(m.add_continuous(0.0, 1.0, 0.0, "z_" + tag + "_" + std::to_string(j)));
      zsum.push_back({b.z.back(), -1.0});
    }
    m.add_row(zsum, Relation::LessEqual, 0.0, "worst_" + tag);
    for (Vertex j = 0; j < inst.num_vertices(); ++j) {
      std::vector<Term> cover;
      if (inst.graph.is_pair(j)) {
        for (int c : pool.involving(j))
          if (c < pool.num_cycles() && cycle_alive[c]) cover.push_back({b.y[c], 1.0});
        psi_terms(idx.in_all(j), 1.0, cover);
        std::vector<Term> init{{b.z[j], 1.0}};
        for (int c : pool.involving(j))
          if (c < pool.num_cycles()) init.push_back({h.x[c], -1.0});
        for (int k : idx.in_all(j)) init.push_back({h.xi[k], -1.0});
        m.add_row(init, Relation::LessEqual, 0.0, "zinit_" + tag + "_" + std::to_string(j));
        std::vector<Term> rec{{b.z[j], 1.0}};
        for (const Term& t : cover) rec.push_back({t.var, -1.0});
        m.add_row(rec, Relation::LessEqual, 0.0, "zrec_" + tag + "_" + std::to_string(j));
      } else {
        psi_terms(idx.out(j, 1), 1.0, cover);
      }
      if (!u.contains(j))
        add_if_useful(m, cover, Relation::LessEqual, 1.0, "rpack_" + tag + "_" + std::to_string(j));
    }
  }

  // recourse chain precedence
  for (Vertex j = 0; j < inst.num_pairs(); ++j) {
    if (u.contains(j)) continue;
    for (int l = 1; l < idx.max_chain(); ++l) {
      std::vector<Term> prec;
      psi_terms(idx.out(j, l + 1), 1.0, prec);
      if (prec.empty()) continue;
      psi_terms(idx.in(j, l), -1.0, prec);
      m.add_row(prec, Relation::LessEqual, 0.0,
                "rprec_" + tag + "_" + std::to_string(j) + "_" + std::to_string(l));
    }
  }
}

}  // namespace detail

/// Adds the recourse block of one more attack.
inline void extend_master_with_attack(MasterHandle& h, const Instance& inst, const Attack& u) {
  detail::check_attack(inst, u);
  for (const auto& b : h.blocks)
    if (b.attack == u) throw Error("attack " + to_string(u) + " is already registered in the master problem");
  MasterBlock block;
  block.attack = u;
  if (h.encoding == Encoding::CC) detail::extend_master_cc(h, inst, block);
  else detail::extend_master_picef(h, inst, block);
  h.blocks.push_back(std::move(block));
}

inline MasterHandle build_master(const Instance& inst, Policy policy, Encoding encoding,
                                 const std::vector<Attack>& attacks) {
  using milp::Relation;
  using milp::Term;
  if (attacks.empty()) throw Error("the master problem needs at least one attack");
  if (encoding == Encoding::CC) detail::require_chains(inst);
  MasterHandle h;
  h.policy = policy;
  h.encoding = encoding;
  h.model.set_integral_objective(true);
  h.Z = h.model.add_continuous(0.0, inst.num_pairs(), 1.0, "Z");
  const auto& pool = inst.pool;

  if (encoding == Encoding::CC) {
    for (int k = 0; k < pool.size(); ++k) h.x.push_back(h.model.add_binary(0.0, "x_" + std::to_string(k)));
    for (Vertex j = 0; j < inst.num_vertices(); ++j) {
      std::vector<Term> row;
      for (int k : pool.involving(j)) row.push_back({h.x[k], 1.0});
      detail::add_if_useful(h.model, row, Relation::LessEqual, 1.0, "pack_" + std::to_string(j));
    }
  } else {
    const PicefIndex idx(inst);
    for (int c = 0; c < pool.num_cycles(); ++c) h.x.push_back(h.model.add_binary(0.0, "x_" + std::to_string(c)));
    for (const PicefArc& a : idx.arcs())
      h.xi.push_back(h.model.add_binary(
          0.0, "xi_" + std::to_string(a.src) + "_" + std::to_string(a.dst) + "_" + std::to_string(a.pos)));
    for (Vertex j = 0; j < inst.num_vertices(); ++j) {
      std::vector<Term> row;
      if (inst.graph.is_pair(j)) {
        for (int c : pool.involving(j))
          if (c < pool.num_cycles()) row.push_back({h.x[c], 1.0});
        for (int k : idx.in_all(j)) row.push_back({h.xi[k], 1.0});
      } else {
        for (int k : idx.out(j, 1)) row.push_back({h.xi[k], 1.0});
      }
      detail::add_if_useful(h.model, row, Relation::LessEqual, 1.0, "pack_" + std::to_string(j));
    }
    for (Vertex j = 0; j < inst.num_pairs(); ++j) {
      for (int l = 1; l < idx.max_chain(); ++l) {
        std::vector<Term> prec;
        for (int k : idx.out(j, l + 1)) prec.push_back({h.xi[k], 1.0});
        if (prec.empty()) continue;
        for (int k : idx.in(j, l)) prec.push_back({h.xi[k], -1.0});
        h.model.add_row(prec, Relation::LessEqual, 0.0, "prec_" + std::to_string(j) + "_" + std::to_string(l));
      }
    }
  }
  for (const Attack& u : attacks) extend_master_with_attack(h, inst, u);
  return h;
}

/// Initial solution encoded by a master assignment.
inline KepSolution extract_initial_solution(const MasterHandle& h, const Instance& inst,
                                            const milp::SolveOutcome& out) {
  if (!out.has_solution) throw Error("master outcome carries no assignment");
  KepSolution x;
  if (h.encoding == Encoding::CC) {
    for (int k = 0; k < inst.pool.size(); ++k)
      if (out.is_set(h.x[k])) x.add(inst.pool[k]);
  } else {
    for (int c = 0; c < inst.pool.num_cycles(); ++c)
      if (out.is_set(h.x[c])) x.add(inst.pool[c]);
    std::vector<std::pair<Vertex, Vertex>> arcs;
    for (int k = 0; k < static_cast<int>(h.xi.size()); ++k)
      if (out.is_set(h.xi[k])) arcs.emplace_back(inst.picef_arcs[k].src, inst.picef_arcs[k].dst);
    for (auto& d : assemble_chains(inst.graph, arcs)) x.add(std::move(d));
  }
  if (!x.is_disjoint()) throw Error("master assignment is not a packing");
  return x;
}

}  // namespace rkep
