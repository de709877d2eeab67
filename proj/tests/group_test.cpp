#include <algorithm>
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "cycbase/families.hpp"
#include "cycbase/group.hpp"
#include "cycbase/oracle.hpp"
#include "test_util.hpp"

using namespace cycbase;
using cycbase::test::G;
using cycbase::test::P;

namespace {

std::set<Perm> element_set(Group const &g)
{
  auto v = enumerate_group(g, 100000);
  return {v.begin(), v.end()};
}

std::vector<Group> small_groups()
{
  return {
      cyclic_group(7),
      dihedral_group(8),
      symmetric_group(5),
      alternating_group(6),
      holomorph_cyclic(12),
      affine_line_group(8),
      projective_group(2, 5),
      projective_group(3, 2),
      wreath_product(symmetric_group(3), cyclic_group(2)),
      wreath_product(cyclic_group(2), symmetric_group(3)),
      direct_product(symmetric_group(3), cyclic_group(4)),
      G(9, {"(1,2,3)(4,5,6)", "(1,4,7)(2,5,8)(3,6,9)", "(2,3)(5,6)(8,9)"}),
      psl2_11_on_11(),
  };
}

} // namespace

TEST(GroupTest, OrdersOfStandardFamilies)
{
  EXPECT_EQ(G(5, {"(1,2,3,4,5)"}).order(), 5);
  EXPECT_EQ(G(5, {"(1,2)", "(1,2,3,4,5)"}).order(), 120);
  EXPECT_EQ(closure_size(G(5, {"(1,2)", "(1,2,3,4,5)"}), 1000), 120u);
  EXPECT_EQ(Group(4).order(), 1);
}

TEST(GroupTest, OrdersMatchClosure)
{
  for (auto const &g : small_groups())
    EXPECT_EQ(g.order(), closure_size(g, 100000)) << "degree " << g.degree();
}

TEST(GroupTest, KnownOrders)
{
  EXPECT_EQ(symmetric_group(8).order(), 40320);
  EXPECT_EQ(alternating_group(9).order(), 181440);
  EXPECT_EQ(projective_group(2, 4).order(), 60);
  EXPECT_EQ(projective_group(2, 7).order(), 336);
  EXPECT_EQ(projective_group(2, 8).order(), 504);
  EXPECT_EQ(projective_group(2, 8, true).order(), 1512);
  EXPECT_EQ(projective_group(3, 3).order(), 5616);
  EXPECT_EQ(affine_line_group(8).order(), 56);
  EXPECT_EQ(psl2_11_on_11().order(), 660);
  EXPECT_EQ(mathieu11().order(), 7920);
  EXPECT_EQ(mathieu23().order(), 10200960);
  EXPECT_EQ(holomorph_cyclic(12).order(), 48);
  EXPECT_EQ(symmetric_group(30).order().str(), "265252859812191058636308480000000");
}

TEST(GroupTest, MembershipMatchesEnumeration)
{
  Rng rng(17);
  for (auto const &g : small_groups()) {
    if (g.degree() > 9)
      continue;
    auto elems = element_set(g);
    for (auto const &x : elems)
      ASSERT_TRUE(g.contains(x));
    for (int i = 0; i < 300; ++i) {
      Perm x = test::random_perm(g.degree(), rng);
      EXPECT_EQ(g.contains(x), elems.count(x) == 1);
    }
  }
}

TEST(GroupTest, MembershipExamples)
{
  Group a4 = alternating_group(4);
  EXPECT_TRUE(a4.contains(P(4, "(1,2,3)")));
  EXPECT_FALSE(a4.contains(P(4, "(1,2)")));
  EXPECT_TRUE(G(4, {"(1,2,3,4)"}).contains(P(4, "(1,3)(2,4)")));
  EXPECT_THROW(a4.contains(P(5, "(1,2,3)")), DegreeError);
}

TEST(GroupTest, PointwiseStabilizer)
{
  Group s4 = symmetric_group(4);
  EXPECT_EQ(pointwise_stabilizer(s4, {0}).order(), 6);
  EXPECT_EQ(pointwise_stabilizer(s4, {0, 1, 2}).order(), 1);
  Group klein = G(4, {"(1,2)(3,4)", "(1,3)(2,4)"});
  EXPECT_EQ(pointwise_stabilizer(klein, {0}).order(), 1);

  // against enumeration
  for (auto const &g : small_groups()) {
    if (g.order() > 20000)
      continue;
    std::vector<point_t> pts{static_cast<point_t>(g.degree() - 1), 1};
    auto stab = pointwise_stabilizer(g, pts);
    std::size_t count = 0;
    for (auto const &x : enumerate_group(g, 100000))
      if (x[pts[0]] == pts[0] && x[pts[1]] == pts[1])
        ++count;
    EXPECT_EQ(stab.order(), count);
    for (auto const &s : stab.generators())
      EXPECT_TRUE(g.contains(s));
  }
}

TEST(GroupTest, DerivedSeries)
{
  auto s4 = derived_series(symmetric_group(4));
  EXPECT_TRUE(is_solvable(symmetric_group(4)));
  EXPECT_EQ(solvable_residual(symmetric_group(4)).order(), 1);
  ASSERT_EQ(s4.size(), 4u);
  EXPECT_EQ(s4[1].order(), 12);
  EXPECT_EQ(s4[2].order(), 4);

  EXPECT_FALSE(is_solvable(symmetric_group(5)));
  Group r = solvable_residual(symmetric_group(5));
  EXPECT_EQ(r.order(), 60);
  EXPECT_EQ(r.order(), closure_size(r, 1000));

  auto c6 = derived_series(cyclic_group(6));
  EXPECT_TRUE(is_solvable(cyclic_group(6)));
  EXPECT_EQ(c6.size(), 2u);
}

TEST(GroupTest, DerivedSubgroupMatchesCommutatorClosure)
{
  for (auto const &g : small_groups()) {
    if (g.order() > 5000)
      continue;
    auto elems = enumerate_group(g, 10000);
    std::vector<Perm> comms;
    std::set<Perm> seen;
    for (auto const &a : elems)
      for (auto const &b : g.generators()) {
        Perm c = commutator(a, b);
        if (seen.insert(c).second)
          comms.push_back(c);
      }
    // [G,G] is the normal closure of [x, s] over x in G, s a generator
    std::size_t expected = closure_size(Group(g.degree(), comms), 100000);
    EXPECT_EQ(derived_subgroup(g).order(), expected);
  }
}

TEST(GroupTest, ResidualIsPerfectAndNormal)
{
  for (auto const &g : small_groups()) {
    Group r = solvable_residual(g);
    EXPECT_EQ(derived_subgroup(r).order(), r.order());
    for (auto const &x : r.generators())
      for (auto const &k : g.generators())
        EXPECT_TRUE(r.contains(conjugate(x, k)));
  }
}

TEST(GroupTest, NormalClosure)
{
  Group s4 = symmetric_group(4);
  EXPECT_EQ(normal_closure(s4, G(4, {"(1,2)(3,4)"})).order(), 4);
  EXPECT_EQ(normal_closure(s4, Group(4)).order(), 1);
  Group nc = normal_closure(symmetric_group(5), G(5, {"(1,2,3)"}));
  EXPECT_EQ(nc.order(), 60);
  EXPECT_EQ(element_set(nc), element_set(alternating_group(5)));
}

TEST(GroupTest, IntersectionExamples)
{
  Group s4 = symmetric_group(4), a4 = alternating_group(4);
  EXPECT_EQ(intersection(s4, a4).order(), 12);
  EXPECT_EQ(intersection(s4, s4).order(), 24);

  Group c4 = G(4, {"(1,2,3,4)"});
  Group d = G(4, {"(1,3)", "(2,4)"});
  auto a = element_set(c4), b = element_set(d);
  std::set<Perm> both;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(both, both.end()));
  EXPECT_EQ(element_set(intersection(c4, d)), both);
}

TEST(GroupTest, IntersectionMatchesEnumeration)
{
  Rng rng(99);
  std::vector<Group> pool{symmetric_group(6),
                          wreath_product(symmetric_group(3), cyclic_group(2)),
                          wreath_product(cyclic_group(2), symmetric_group(3)),
                          projective_group(2, 5),
                          holomorph_cyclic(6),
                          dihedral_group(6),
                          alternating_group(6),
                          G(6, {"(1,2)(3,4)", "(3,4)(5,6)"})};
  for (int trial = 0; trial < 40; ++trial) {
    Group g = pool[rng.below(pool.size())];
    Group w = conjugate_group(pool[rng.below(pool.size())], test::random_perm(6, rng));
    auto a = element_set(g), b = element_set(w);
    std::set<Perm> both;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::inserter(both, both.end()));
    EXPECT_EQ(element_set(intersection(g, w)), both) << "trial " << trial;
  }
}

TEST(GroupTest, ConjugatingElement)
{
  Group s5 = symmetric_group(5);
  Perm c = P(5, "(1,2,3,4,5)"), d = P(5, "(1,3,5,2,4)");
  auto k = conjugating_element(s5, c, d);
  ASSERT_TRUE(k);
  EXPECT_TRUE(s5.contains(*k));
  Perm e = conjugate(c, *k);
  EXPECT_TRUE(Group(5, {d}).contains(e));

  auto self = conjugating_element(s5, c, c);
  ASSERT_TRUE(self);
  EXPECT_TRUE(Group(5, {c}).contains(conjugate(c, *self)));

  Group c7 = cyclic_group(7);
  auto id = conjugating_element(c7, full_cycle(7), full_cycle(7));
  ASSERT_TRUE(id);
  EXPECT_EQ(conjugate(full_cycle(7), *id), full_cycle(7));

  EXPECT_THROW(conjugating_element(alternating_group(4), P(4, "(1,2,3,4)"), P(4, "(1,2,3,4)")),
               ArgumentError);
}

TEST(GroupTest, ConjugatingElementAgreesWithBruteForce)
{
  // cyclic subgroups of non-full-cycle type too
  std::vector<Group> pool{dihedral_group(8), holomorph_cyclic(8),
                          wreath_product(cyclic_group(2), cyclic_group(4)),
                          affine_line_group(7), projective_group(2, 7)};
  Rng rng(4);
  for (auto const &k : pool) {
    auto elems = enumerate_group(k, 100000);
    for (int trial = 0; trial < 30; ++trial) {
      Perm c = elems[rng.below(elems.size())];
      Perm d = elems[rng.below(elems.size())];
      if (trial % 3 == 0)
        d = conjugate(c.pow(static_cast<long long>(1 + rng.below(3))),
                      elems[rng.below(elems.size())]);
      Group dgrp(k.degree(), {d});
      bool exists = false;
      if (element_order(c) == element_order(d))
        for (auto const &x : elems)
          if (dgrp.contains(conjugate(c, x))) {
            exists = true;
            break;
          }
      auto found = conjugating_element(k, c, d);
      EXPECT_EQ(found.has_value(), exists);
      if (found) {
        EXPECT_TRUE(k.contains(*found));
        EXPECT_TRUE(dgrp.contains(conjugate(c, *found)));
      }
    }
  }
}

TEST(GroupTest, RandomElementTrivialAndDeterministic)
{
  Group triv(5);
  for (std::uint64_t s = 0; s < 20; ++s)
    EXPECT_TRUE(random_element(triv, s).is_identity());
  Group s6 = symmetric_group(6);
  EXPECT_EQ(random_element(s6, 42), random_element(s6, 42));
}

TEST(GroupTest, RandomElementUniformOnC2)
{
  Group c2 = G(2, {"(1,2)"});
  Rng rng(2024);
  int ids = 0, draws = 10000;
  for (int i = 0; i < draws; ++i)
    ids += random_element(c2, rng).is_identity();
  // 2 sigma = 2 * sqrt(n / 4) = 100
  EXPECT_NEAR(ids, draws / 2, 100);
}

TEST(GroupTest, RandomElementCoversSym4)
{
  Group s4 = symmetric_group(4);
  Rng rng(1);
  std::set<Perm> seen;
  for (int i = 0; i < 1000; ++i) {
    Perm x = random_element(s4, rng);
    EXPECT_TRUE(s4.contains(x));
    seen.insert(x);
  }
  EXPECT_EQ(seen.size(), 24u);
}

TEST(GroupTest, BsgsStructure)
{
  for (auto const &g : small_groups()) {
    auto const &b = g.bsgs();
    order_t prod = 1;
    for (std::size_t l = 0; l < b.base_length(); ++l) {
      prod *= b.orbit(l).size();
      for (auto const &s : b.level_generators(l))
        for (std::size_t j = 0; j < l; ++j)
          EXPECT_EQ(s[b.base_point(j)], b.base_point(j));
    }
    EXPECT_EQ(prod, g.order());
  }
}

TEST(GroupTest, BasePrefixAndConjugatedChain)
{
  Group g = projective_group(2, 7);
  Bsgs chain(g.degree(), g.generators(), Bsgs::Options{{7, 3}});
  EXPECT_EQ(chain.base_point(0), 7u);
  EXPECT_EQ(chain.base_point(1), 3u);
  EXPECT_EQ(chain.order(), 336);

  Rng rng(8);
  Perm k = test::random_perm(8, rng);
  Bsgs conj = g.bsgs().conjugated(k);
  EXPECT_EQ(conj.order(), 336);
  for (auto const &s : g.generators())
    EXPECT_TRUE(conj.contains(conjugate(s, k)));
  EXPECT_FALSE(conj.contains(conjugate(P(8, "(1,2)"), k)));
}

TEST(GroupTest, FromStrongGenerators)
{
  Group g = wreath_product(symmetric_group(3), cyclic_group(3));
  auto const &b = g.bsgs();
  Bsgs copy = Bsgs::from_strong_generators(g.degree(), b.base(), b.strong_generators());
  EXPECT_EQ(copy.order(), g.order());
}

TEST(GroupTest, ActionOnDisjointUnionKernel)
{
  // Sym(3) wr C2 acting on 6 points plus its 2 blocks; base restricted to the
  // block points gives the kernel as residues
  Group k = wreath_product(symmetric_group(3), cyclic_group(2));
  std::vector<Perm> combined;
  for (auto const &g : k.generators()) {
    std::vector<point_t> imgs(8);
    for (point_t x = 0; x < 6; ++x)
      imgs[x] = g[x];
    imgs[6] = 6 + g[0] / 3;
    imgs[7] = 6 + g[3] / 3;
    combined.emplace_back(std::move(imgs));
  }
  Bsgs::Options opts;
  opts.domain_lo = 6;
  opts.domain_hi = 8;
  Bsgs chain(8, combined, opts);
  EXPECT_EQ(chain.order(), 2);
  Group kernel = normal_closure(Group(8, combined), Group(8, chain.kernel_generators()));
  EXPECT_EQ(kernel.order(), 36);
}
