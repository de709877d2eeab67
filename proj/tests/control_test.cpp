#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace cycbase;
using cycbase::test::G;
using cycbase::test::P;

TEST(ControlTest, SolvableInputIsReturned)
{
  Group k = cyclic_group(6);
  auto r = control_subgroup(k, 1);
  EXPECT_EQ(r.m.order(), 6);
  EXPECT_NE(r.conclusion, Conclusion::ProvablyEmptyCyc);
  EXPECT_EQ(control_subgroup(alternating_group(4), 1).m.order(), 12);
}

TEST(ControlTest, Sym5WreathC2)
{
  Group k = wreath_product(symmetric_group(5), cyclic_group(2));
  auto r = control_subgroup(k, 1);
  // |AGL(1,5)|^2 * 2
  EXPECT_EQ(r.m.order(), 20 * 20 * 2);
  EXPECT_EQ(r.conclusion, Conclusion::ControlsCyc);
  EXPECT_TRUE(is_solvable(r.m));
  for (auto const &g : r.m.generators())
    EXPECT_TRUE(k.contains(g));
  std::vector<Perm> reps;
  for (auto const &c : oracle_cyc(k, 1000000))
    reps.push_back(c.representative);
  auto rep = verify_control(k, r.m, reps);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.checked, reps.size());
}

TEST(ControlTest, NonNormalMinimalSystem)
{
  Group k = generate_corpus("tiny").find("Sym3reg")->group;
  auto r = control_subgroup(k, 1);
  EXPECT_TRUE(r.m.is_trivial());
  EXPECT_EQ(r.conclusion, Conclusion::ProvablyEmptyCyc);
  EXPECT_TRUE(oracle_cyc(k, 1000).empty());
}

TEST(ControlTest, IntransitiveInput)
{
  auto r = control_subgroup(G(6, {"(1,2,3)", "(4,5)"}), 1);
  EXPECT_TRUE(r.m.is_trivial());
  EXPECT_EQ(r.conclusion, Conclusion::ProvablyEmptyCyc);
}

TEST(ControlTest, VerifyControlTrivialCases)
{
  Group k = symmetric_group(5);
  std::vector<Perm> reps;
  for (auto const &c : oracle_cyc(k, 1000))
    reps.push_back(c.representative);
  EXPECT_TRUE(verify_control(k, k, reps).ok());
  EXPECT_TRUE(verify_control(alternating_group(4), Group::trivial(4), {}).ok());
  // the trivial group controls nothing
  EXPECT_FALSE(verify_control(k, Group::trivial(5), reps).ok());
}

TEST(ControlTest, DeterministicForSeed)
{
  Group k = generate_corpus("paper-cases").find("M11")->group;
  auto a = control_subgroup(k, 5);
  auto b = control_subgroup(k, 5);
  EXPECT_EQ(a.m.generators(), b.m.generators());
  EXPECT_EQ(a.trace.size(), b.trace.size());
}

TEST(ControlTest, CorpusControlProperty)
{
  for (auto const &e : generate_corpus("paper-cases").entries) {
    if (!e.enumerable || e.group.degree() > 12)
      continue;
    auto r = control_subgroup(e.group, 1);
    EXPECT_TRUE(is_solvable(r.m)) << e.name;
    for (auto const &g : r.m.generators())
      EXPECT_TRUE(e.group.contains(g)) << e.name;
    std::vector<Perm> reps;
    for (auto const &c : oracle_cyc(e.group, 1000000))
      reps.push_back(c.representative);
    EXPECT_TRUE(verify_control(e.group, r.m, reps).ok()) << e.name;
    if (r.conclusion == Conclusion::ProvablyEmptyCyc) {
      EXPECT_TRUE(reps.empty()) << e.name;
    }
  }
}

TEST(ControlTest, RecursionDepthIsLogarithmic)
{
  Group k = symmetric_group(5);
  for (int level = 0; level < 4; ++level) {
    k = wreath_product(k, cyclic_group(2));
    auto r = control_subgroup(k, 1);
    std::size_t depth = 0;
    for (auto const &t : r.trace)
      depth = std::max(depth, t.depth);
    EXPECT_LE(1u << depth, k.degree());
    EXPECT_TRUE(is_solvable(r.m));
  }
}

TEST(ControlTest, TwistedWreathKeepsOrder)
{
  Group k = wreath_product(symmetric_group(5), cyclic_group(2));
  Rng rng(11);
  for (int i = 0; i < 10; ++i) {
    Group kt = conjugate_group(k, test::random_perm(10, rng));
    auto r = control_subgroup(kt, i);
    EXPECT_EQ(r.m.order(), 800);
    for (auto const &g : r.m.generators())
      EXPECT_TRUE(kt.contains(g));
  }
}
