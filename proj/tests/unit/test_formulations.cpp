#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rkep/formulations.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace rkep;
using rkep::testing::strength_graph;

namespace {

const Exchange kChain = make_chain({3, 0, 1, 2});
const Exchange kCycle = make_cycle({1, 2});

constexpr Policy kPolicies[] = {Policy::FullRecourse, Policy::FixSuccessfulExchanges};
constexpr Encoding kEncodings[] = {Encoding::CC, Encoding::PICEF};

milp::SolveOutcome solved(const milp::Model& m) {
  auto out = milp::solve(m);
  EXPECT_EQ(out.status, milp::SolveStatus::Optimal);
  return out;
}

int optimum(const milp::Model& m) { return static_cast<int>(std::lround(solved(m).objective)); }

int subproblem_at(const SubproblemHandle& h, const Attack& u) {
  milp::Model m = h.model;
  for (Vertex j = 0; j < static_cast<int>(h.u.size()); ++j) m.fix(h.u[j], u.contains(j) ? 1.0 : 0.0);
  return optimum(m);
}

std::string label(Encoding e, Policy p) { return std::string(to_string(e)) + "/" + to_string(p); }

}  // namespace

TEST(Master, ZeroAttackGivesMaxTransplants) {
  auto inst = make_instance(strength_graph(), 3, 3);
  for (auto p : kPolicies)
    for (auto e : kEncodings) {
      auto h = build_master(inst, p, e, {Attack({}, 1)});
      auto out = solved(h.model);
      EXPECT_EQ(std::lround(out.objective), 3) << label(e, p);
      auto x = extract_initial_solution(h, inst, out);
      EXPECT_EQ(x.covered_pairs(inst.graph).size(), 3u) << label(e, p);
    }
}

TEST(Master, AddingAttackLowersOptimum) {
  auto inst = make_instance(strength_graph(), 3, 3);
  for (auto p : kPolicies)
    for (auto e : kEncodings) {
      auto h = build_master(inst, p, e, {Attack({}, 1)});
      extend_master_with_attack(h, inst, Attack({1}, 1));
      EXPECT_EQ(optimum(h.model), 1) << label(e, p);
      EXPECT_EQ(h.blocks.size(), 2u);
    }
}

TEST(Master, DuplicateAttackRejected) {
  auto inst = make_instance(strength_graph(), 3, 3);
  auto h = build_master(inst, Policy::FullRecourse, Encoding::CC, {Attack({}, 1)});
  EXPECT_THROW(extend_master_with_attack(h, inst, Attack({}, 1)), Error);
  EXPECT_THROW(build_master(inst, Policy::FullRecourse, Encoding::CC, {}), Error);
}

TEST(Master, FullBudgetAttackGivesZero) {
  auto inst = make_instance(strength_graph(), 3, 3);
  for (auto p : kPolicies)
    for (auto e : kEncodings) {
      auto h = build_master(inst, p, e, {Attack({}, 4)});
      extend_master_with_attack(h, inst, Attack({0, 1, 2, 3}, 4));
      EXPECT_EQ(optimum(h.model), 0) << label(e, p);
    }
}

TEST(Master, EmptyGraph) {
  auto inst = make_instance(CompatibilityGraph(0, 0, {}), 3, 3);
  for (auto e : kEncodings) EXPECT_EQ(optimum(build_master(inst, Policy::FullRecourse, e, {Attack()}).model), 0);
}

TEST(Master, AllAttacksMatchesOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 12; ++trial) {
    auto g = rkep::testing::random_graph(rng, 4 + trial % 2, trial % 3 == 0 ? 0 : 1, 0.4);
    auto inst = make_instance(g, 3, trial % 4);
    const int budget = 1 + trial % 2;
    std::vector<Attack> attacks;
    rkep::testing::for_each_attack(inst.num_vertices(), budget, [&](const Attack& u) { attacks.push_back(u); });
    for (auto p : kPolicies) {
      const int want = rkep::testing::oracle_robust(inst, budget, p);
      for (auto e : kEncodings)
        EXPECT_EQ(optimum(build_master(inst, p, e, attacks).model), want) << "trial " << trial << " " << label(e, p);
    }
  }
}

TEST(Subproblem, NoCutsGivesZero) {
  auto inst = make_instance(strength_graph(), 3, 3);
  for (auto p : kPolicies)
    for (auto e : kEncodings) EXPECT_EQ(optimum(build_subproblem(KepSolution({kChain}), inst, p, e, 1).model), 0);
}

TEST(Subproblem, StrengthInstance) {
  auto inst = make_instance(strength_graph(), 3, 3);
  const KepSolution x({kChain});
  for (auto p : kPolicies) {
    int value[2];
    for (auto e : kEncodings) {
      auto h = build_subproblem(x, inst, p, e, 1);
      add_interdiction_cut(h, x);
      add_interdiction_cut(h, KepSolution({kCycle}));
      value[e == Encoding::PICEF] = optimum(h.model);
    }
    EXPECT_EQ(value[0], 0) << to_string(p);
    EXPECT_EQ(value[1], 1) << to_string(p);
  }
}

TEST(Subproblem, CutRowShapes) {
  auto inst = make_instance(strength_graph(), 3, 3);
  const KepSolution x({kChain});
  auto cc = build_subproblem(x, inst, Policy::FullRecourse, Encoding::CC, 1);
  auto row = add_interdiction_cut(cc, KepSolution({kCycle}));
  const auto& r = cc.model.row(row);
  ASSERT_EQ(r.terms.size(), 2u);
  EXPECT_DOUBLE_EQ(r.terms[1].coef, -2.0);

  auto pc = build_subproblem(x, inst, Policy::FullRecourse, Encoding::PICEF, 1);
  const int before = pc.model.num_rows();
  add_interdiction_cut(pc, x);
  EXPECT_EQ(pc.model.num_rows() - before, 4);  // three zeta rows and the cut
  EXPECT_EQ(pc.zeta.at(kChain.vertices).size(), 3u);
  add_interdiction_cut(pc, x);
  EXPECT_EQ(pc.zeta.size(), 1u);  // shared across cuts
  EXPECT_THROW(add_interdiction_cut(pc, KepSolution({kChain, kCycle})), Error);
}

TEST(Subproblem, AllMaximalCutsGiveWorstCase) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 15; ++trial) {
    auto g = rkep::testing::random_graph(rng, 4 + trial % 3, trial % 3 == 0 ? 0 : 1 + trial % 2, 0.35);
    auto inst = make_instance(g, 3, trial % 4);
    const auto packings = rkep::testing::maximal_packings(inst);
    const int budget = trial % 3;
    std::uniform_int_distribution<std::size_t> pick(0, packings.size() - 1);
    const KepSolution x = packings[pick(rng)];
    for (auto p : kPolicies) {
      const int want = rkep::testing::oracle_worst_case(inst, x, budget, p);
      for (auto e : kEncodings) {
        auto h = build_subproblem(x, inst, p, e, budget);
        for (const auto& s : packings) add_interdiction_cut(h, s);
        EXPECT_EQ(optimum(h.model), want) << "trial " << trial << " " << label(e, p);
      }
    }
  }
}

TEST(Subproblem, CutsNeverExceedRecourse) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    auto g = rkep::testing::random_graph(rng, 5, 1, 0.35);
    auto inst = make_instance(g, 3, 3);
    const auto packings = rkep::testing::maximal_packings(inst);
    const KepSolution x = packings[trial % packings.size()];
    for (auto p : kPolicies)
      for (auto e : kEncodings) {
        auto h = build_subproblem(x, inst, p, e, 2);
        for (std::size_t k = 0; k < packings.size(); k += 2) add_interdiction_cut(h, packings[k]);
        rkep::testing::for_each_attack(inst.num_vertices(), 2, [&](const Attack& u) {
          const int z = subproblem_at(h, u);
          EXPECT_LE(z, rkep::testing::oracle_recourse(inst, x, u, p)) << label(e, p);
          if (p == Policy::FullRecourse) {
            // surviving whole exchanges are always counted
            const auto px = x.covered_pairs(inst.graph);
            for (const auto& s : h.cuts) {
              int w = 0;
              for (const auto& ex : s.exchanges())
                if (!u.hits(ex)) w += exchange_weight(ex, px);
              EXPECT_GE(z, w);
            }
          }
        });
      }
  }
}

TEST(Subproblem, PicefDominatesCC) {
  std::mt19937_64 rng(21);
  int strict = 0;
  for (int trial = 0; trial < 40; ++trial) {
    auto g = rkep::testing::random_graph(rng, 4 + trial % 3, 1 + trial % 2, 0.4);
    auto inst = make_instance(g, 3, 1 + trial % 3);
    const auto packings = rkep::testing::maximal_packings(inst);
    std::uniform_int_distribution<std::size_t> pick(0, packings.size() - 1);
    const KepSolution x = packings[pick(rng)];
    std::vector<KepSolution> cuts{x};
    for (int k = 0; k < 3; ++k) cuts.push_back(packings[pick(rng)]);
    for (auto p : kPolicies) {
      int v[2];
      for (auto e : kEncodings) {
        auto h = build_subproblem(x, inst, p, e, 1 + trial % 2);
        for (const auto& s : cuts) add_interdiction_cut(h, s);
        v[e == Encoding::PICEF] = optimum(h.model);
      }
      EXPECT_GE(v[1], v[0]) << "trial " << trial << " " << to_string(p);
      strict += v[1] > v[0];
    }
  }
  EXPECT_GT(strict, 0);
}

TEST(Recourse, StrengthInstanceExamples) {
  auto inst = make_instance(strength_graph(), 3, 3);
  const KepSolution x({kChain});
  for (auto e : kEncodings) {
    auto h = build_recourse(x, Attack({1}, 1), inst, Policy::FullRecourse, e, false);
    auto cs = extract_cut_solution(h, inst, solved(h.model));
    EXPECT_EQ(cs.recourse_value, 1) << to_string(e);
    EXPECT_EQ(cs.solution, KepSolution({make_chain({3, 0})})) << to_string(e);

    auto h2 = build_recourse(x, Attack({0}, 1), inst, Policy::FullRecourse, e, false);
    auto cs2 = extract_cut_solution(h2, inst, solved(h2.model));
    EXPECT_EQ(cs2.recourse_value, 2) << to_string(e);
    EXPECT_EQ(cs2.solution, KepSolution({kCycle})) << to_string(e);

    auto hl = build_recourse(x, Attack({1}, 1), inst, Policy::FullRecourse, e, true);
    auto cl = extract_cut_solution(hl, inst, solved(hl.model));
    EXPECT_EQ(cl.recourse_value, 1) << to_string(e);
    EXPECT_GE(cl.solution.size(), cs.solution.size());
  }
}

TEST(Recourse, NoAttackKeepsEverything) {
  auto inst = make_instance(strength_graph(), 3, 3);
  const KepSolution x({kChain});
  for (auto p : kPolicies)
    for (auto e : kEncodings)
      for (bool lifted : {false, true}) {
        auto h = build_recourse(x, Attack(), inst, p, e, lifted);
        auto cs = extract_cut_solution(h, inst, solved(h.model));
        EXPECT_EQ(cs.recourse_value, 3);
        if (p == Policy::FixSuccessfulExchanges) EXPECT_EQ(cs.recourse, x);
      }
}

TEST(Recourse, FseKeepsPrefixUnextended) {
  // x = chain 3-0 only; under fse the chain stays as it is
  auto inst = make_instance(strength_graph(), 3, 3);
  const KepSolution x({make_chain({3, 0})});
  for (auto e : kEncodings)
    for (bool lifted : {false, true}) {
      auto fr = build_recourse(x, Attack(), inst, Policy::FullRecourse, e, lifted);
      auto fse = build_recourse(x, Attack(), inst, Policy::FixSuccessfulExchanges, e, lifted);
      auto a = extract_cut_solution(fr, inst, solved(fr.model));
      auto b = extract_cut_solution(fse, inst, solved(fse.model));
      EXPECT_EQ(a.recourse_value, 1);
      EXPECT_EQ(b.recourse_value, 1);
      const auto& ex = b.recourse.exchanges();
      EXPECT_NE(std::find(ex.begin(), ex.end(), make_chain({3, 0})), ex.end()) << to_string(e) << lifted;
      if (lifted) EXPECT_EQ(b.solution, KepSolution({make_chain({3, 0}), kCycle})) << to_string(e);
    }
}

TEST(Recourse, MatchesOracleAndLiftingDominates) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    auto g = rkep::testing::random_graph(rng, 4 + trial % 3, trial % 3, 0.4);
    auto inst = make_instance(g, 3, trial % 4);
    const auto packings = rkep::testing::maximal_packings(inst);
    const KepSolution x = packings[trial % packings.size()];
    rkep::testing::for_each_attack(inst.num_vertices(), 1 + trial % 2, [&](const Attack& u) {
      for (auto p : kPolicies) {
        const int want = rkep::testing::oracle_recourse(inst, x, u, p);
        for (auto e : kEncodings) {
          auto hp = build_recourse(x, u, inst, p, e, false);
          auto hl = build_recourse(x, u, inst, p, e, true);
          auto cp = extract_cut_solution(hp, inst, solved(hp.model));
          auto cl = extract_cut_solution(hl, inst, solved(hl.model));
          EXPECT_EQ(cp.recourse_value, want) << label(e, p);
          EXPECT_EQ(cl.recourse_value, want) << label(e, p);
          EXPECT_TRUE(is_admissible_recourse(x, u, cp.recourse, p));
          EXPECT_TRUE(is_admissible_recourse(x, u, cl.recourse, p));
          EXPECT_EQ(objective_value(inst.graph, x, u, cl.recourse), want);
          EXPECT_TRUE(cl.solution.is_disjoint());
          // lifted solution covers at least the vertices of its recourse part
          for (const auto& ex : cl.recourse.exchanges()) {
            const auto& all = cl.solution.exchanges();
            if (ex.is_cycle() || e == Encoding::CC)
              EXPECT_NE(std::find(all.begin(), all.end(), ex), all.end());
          }
        }
      }
    });
  }
}
