#include <gtest/gtest.h>

#include "rkep/kep.hpp"
#include "support/fixtures.hpp"

using namespace rkep;
using rkep::testing::strength_graph;

namespace {
const Exchange kChain = make_chain({3, 0, 1, 2});
const Exchange kCycle = make_cycle({1, 2});
}  // namespace

TEST(Attack, BudgetEnforced) {
  EXPECT_THROW(Attack({0, 1}, 1), Error);
  EXPECT_THROW(Attack({}, -1), Error);
  Attack u({2, 0, 2}, 2);
  EXPECT_EQ(u.vertices(), (std::vector<Vertex>{0, 2}));
  EXPECT_TRUE(u.hits(kChain));
  EXPECT_FALSE(Attack({0}, 1).hits(kCycle));
}

TEST(EnforceableSet, ChainGivesPairPrefixes) {
  KepSolution x({kChain});
  auto enf = enforceable_set(x);
  const std::vector<Exchange> want{make_chain({3, 0}), make_chain({3, 0, 1}), make_chain({3, 0, 1, 2})};
  EXPECT_EQ(enf, want);
  EXPECT_EQ(enforceable_set(KepSolution({kCycle})), std::vector<Exchange>{kCycle});
  EXPECT_TRUE(enforceable_set(KepSolution()).empty());
}

TEST(EnforceableSet, MonotoneInInitialSolution) {
  KepSolution small({make_cycle({1, 2})});
  KepSolution big({make_cycle({1, 2}), make_chain({3, 0})});
  auto a = enforceable_set(small), b = enforceable_set(big);
  for (const auto& e : a) EXPECT_NE(std::find(b.begin(), b.end(), e), b.end());
}

TEST(SurvivingStructures, AttackOnMiddlePair) {
  auto inst = make_instance(strength_graph(), 3, 3);
  auto s = surviving_structures(inst.pool, Attack({1}, 1));
  std::vector<Exchange> alive;
  for (int k : s.surviving) alive.push_back(inst.pool[k]);
  EXPECT_EQ(alive, std::vector<Exchange>{make_chain({3, 0})});
  // pair 0 keeps every chain through it enforceable, the cycle is gone
  EXPECT_EQ(s.enforcing[0].size(), 3u);
  EXPECT_TRUE(s.enforcing[2].empty());
}

TEST(SurvivingStructures, EmptyAndFullAttacks) {
  auto inst = make_instance(strength_graph(), 3, 3);
  EXPECT_EQ(static_cast<int>(surviving_structures(inst.pool, Attack({}, 0)).surviving.size()), inst.pool.size());
  EXPECT_TRUE(surviving_structures(inst.pool, Attack({0, 1, 2, 3}, 4)).surviving.empty());
}

TEST(ExchangeWeight, Examples) {
  EXPECT_EQ(exchange_weight(kCycle, {0, 1, 2}), 2);
  EXPECT_EQ(exchange_weight(make_chain({3, 0}), {1, 2}), 0);
  EXPECT_EQ(arc_weight(0, 1, {0, 1, 2}), 1);
  EXPECT_EQ(arc_weight(3, 0, {1, 2}), 0);
}

TEST(ObjectiveValue, Examples) {
  auto g = strength_graph();
  KepSolution x({kChain});
  EXPECT_EQ(objective_value(g, x, Attack({1}, 1), KepSolution({make_chain({3, 0})})), 1);
  EXPECT_EQ(objective_value(g, x, Attack({}, 0), x), 3);
  EXPECT_EQ(objective_value(g, x, Attack({1}, 1), KepSolution()), 0);
  EXPECT_THROW(objective_value(g, x, Attack({1}, 1), x), Error);
}

TEST(EnforcedExchanges, LongestAttackFreePrefix) {
  KepSolution x({kChain});
  EXPECT_EQ(enforced_exchanges(x, Attack({2}, 1)), std::vector<Exchange>{make_chain({3, 0, 1})});
  EXPECT_TRUE(enforced_exchanges(x, Attack({0}, 1)).empty());
  EXPECT_EQ(enforced_exchanges(KepSolution({kCycle}), Attack({}, 0)), std::vector<Exchange>{kCycle});
}

TEST(AdmissibleRecourse, FixSuccessfulExchangesRequiresPrefix) {
  KepSolution x({kChain});
  Attack u({2}, 1);
  EXPECT_TRUE(is_admissible_recourse(x, u, KepSolution({make_chain({3, 0})}), Policy::FullRecourse));
  EXPECT_FALSE(is_admissible_recourse(x, u, KepSolution({make_chain({3, 0})}), Policy::FixSuccessfulExchanges));
  EXPECT_TRUE(
      is_admissible_recourse(x, u, KepSolution({make_chain({3, 0, 1})}), Policy::FixSuccessfulExchanges));
}
