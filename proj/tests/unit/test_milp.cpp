#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "rkep/milp/branch_and_bound.hpp"
#include "support/random_milp.hpp"

using namespace rkep::milp;

TEST(MilpModel, AddVariableReturnsSequentialHandles) {
  Model m;
  EXPECT_EQ(m.add_binary(1.0).value, 0);
  EXPECT_EQ(m.add_continuous(0.0, 5.0, 0.0).value, 1);
  EXPECT_EQ(m.num_vars(), 2);
}

TEST(MilpModel, InvertedBoundsRejected) {
  Model m;
  EXPECT_THROW(m.add_continuous(2.0, 1.0), rkep::Error);
}

TEST(MilpModel, RowWithUnknownVariableRejected) {
  Model m;
  m.add_binary();
  EXPECT_THROW(m.add_row({{VarId{3}, 1.0}}, Relation::LessEqual, 1.0), rkep::Error);
}

TEST(MilpModel, DuplicateTermsMerged) {
  Model m;
  auto a = m.add_binary();
  m.add_row({{a, 1.0}, {a, 2.0}}, Relation::LessEqual, 3.0);
  ASSERT_EQ(m.row(0).terms.size(), 1u);
  EXPECT_DOUBLE_EQ(m.row(0).terms[0].coef, 3.0);
}

TEST(MilpSolve, PackingRow) {
  Model m(Sense::Maximize);
  auto a = m.add_binary(1.0), b = m.add_binary(1.0);
  m.add_row({{a, 1}, {b, 1}}, Relation::LessEqual, 1);
  auto out = solve(m);
  ASSERT_EQ(out.status, SolveStatus::Optimal);
  EXPECT_NEAR(out.objective, 1.0, 1e-9);
}

TEST(MilpSolve, ThreeItemKnapsack) {
  Model m(Sense::Maximize);
  auto a = m.add_binary(5), b = m.add_binary(4), c = m.add_binary(3);
  m.add_row({{a, 2}, {b, 3}, {c, 1}}, Relation::LessEqual, 5);
  m.add_row({{a, 4}, {b, 1}, {c, 2}}, Relation::LessEqual, 11);
  m.add_row({{a, 3}, {b, 4}, {c, 2}}, Relation::LessEqual, 8);
  auto out = solve(m);
  ASSERT_EQ(out.status, SolveStatus::Optimal);
  EXPECT_NEAR(out.objective, 9.0, 1e-9);
  // enumeration: {a,b} is the unique optimum; {a,c} is feasible with value 8
  EXPECT_TRUE(out.is_set(a));
  EXPECT_TRUE(out.is_set(b));
  EXPECT_FALSE(out.is_set(c));
}

TEST(MilpSolve, ContinuousMinimumOverLowerBounds) {
  Model m(Sense::Minimize);
  auto z = m.add_continuous(0, 100, 1);
  m.add_row({{z, 1}}, Relation::GreaterEqual, 2);
  m.add_row({{z, 1}}, Relation::GreaterEqual, 3);
  auto out = solve(m);
  ASSERT_EQ(out.status, SolveStatus::Optimal);
  EXPECT_NEAR(out.objective, 3.0, 1e-9);
}

TEST(MilpSolve, EmptyRowZeroGreaterOneIsInfeasible) {
  Model m;
  m.add_binary(1.0);
  m.add_row({}, Relation::GreaterEqual, 1.0);
  EXPECT_EQ(solve(m).status, SolveStatus::Infeasible);
}

TEST(MilpSolve, MixedRowAccepted) {
  Model m(Sense::Maximize);
  auto z = m.add_continuous(0, 10, 1);
  auto s = m.add_binary(0);
  m.add_row({{z, 1}, {s, -3}}, Relation::LessEqual, 0);
  auto out = solve(m);
  ASSERT_EQ(out.status, SolveStatus::Optimal);
  EXPECT_NEAR(out.objective, 3.0, 1e-9);
}

TEST(MilpSolve, InfeasibleEquality) {
  Model m;
  auto a = m.add_binary(1), b = m.add_binary(1);
  m.add_row({{a, 2}, {b, 2}}, Relation::Equal, 1);
  EXPECT_EQ(solve(m).status, SolveStatus::Infeasible);
}

TEST(MilpSolve, AddingRowNeverImprovesMaximum) {
  Model m(Sense::Maximize);
  std::vector<VarId> x;
  for (int j = 0; j < 6; ++j) x.push_back(m.add_binary(j + 1));
  m.add_row({{x[0], 1}, {x[1], 1}, {x[2], 1}}, Relation::LessEqual, 2);
  const double before = solve(m).objective;
  m.add_row({{x[5], 1}, {x[4], 1}}, Relation::LessEqual, 1);
  const double after = solve(m).objective;
  EXPECT_LE(after, before + 1e-9);
  EXPECT_NEAR(after, 15.0, 1e-9);
}

TEST(MilpSolve, TimeLimitReported) {
  Model m(Sense::Maximize);
  std::vector<VarId> x;
  for (int j = 0; j < 40; ++j) x.push_back(m.add_binary(1.0 + 0.01 * j));
  std::vector<Term> t;
  for (auto v : x) t.push_back({v, 2.0});
  m.add_row(t, Relation::LessEqual, 41);
  SolveOptions opts;
  opts.time_limit = 0.0;
  auto out = solve(m, opts);
  EXPECT_EQ(out.status, SolveStatus::TimeLimit);
}

TEST(MilpSolve, LpFormatDumpListsSections) {
  Model m(Sense::Maximize);
  auto a = m.add_binary(1.0, "a");
  auto z = m.add_continuous(0, 4, 2.0, "z");
  m.add_row({{a, 1}, {z, -1}}, Relation::GreaterEqual, 0, "link");
  std::ostringstream os;
  write_lp(m, os);
  const std::string s = os.str();
  EXPECT_NE(s.find("Maximize"), std::string::npos);
  EXPECT_NE(s.find("link: a - z >= 0"), std::string::npos);
  EXPECT_NE(s.find("Binaries\n a\n"), std::string::npos);
}

class RandomMilpTest : public ::testing::TestWithParam<int> {};

TEST_P(RandomMilpTest, MatchesEnumeration) {
  std::mt19937_64 rng(1000 + GetParam());
  auto p = rkep::testing::make_random_milp(rng);
  const auto expected = rkep::testing::enumerate_optimum(p);
  const auto out = solve(p.model);
  if (!expected) {
    EXPECT_EQ(out.status, SolveStatus::Infeasible);
    return;
  }
  ASSERT_EQ(out.status, SolveStatus::Optimal);
  EXPECT_NEAR(out.objective, *expected, 1e-6);
  EXPECT_LE(p.model.max_violation(out.assignment), 1e-6);
  const auto again = solve(p.model);
  EXPECT_EQ(again.assignment, out.assignment);
  EXPECT_EQ(again.nodes, out.nodes);
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomMilpTest, ::testing::Range(0, 60));
