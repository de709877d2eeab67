#include <gtest/gtest.h>

#include "cycbase/perm.hpp"
#include "test_util.hpp"

using namespace cycbase;
using cycbase::test::P;

TEST(PermTest, ComposeActsOnTheRight)
{
  EXPECT_TRUE(compose(P(2, "(1,2)"), P(2, "(1,2)")).is_identity());
  EXPECT_EQ(compose(P(3, "(1,2,3)"), P(3, "(1,2,3)")), P(3, "(1,3,2)"));

  Perm g = P(3, "(1,2)"), h = P(3, "(2,3)");
  EXPECT_EQ(compose(g, h)[0], 2u);
  EXPECT_THROW(compose(P(3, "(1,2)"), P(4, "(1,2)")), DegreeError);
}

TEST(PermTest, ConjugateMatchesImageRule)
{
  Perm g = P(3, "(1,2,3)");
  EXPECT_EQ(conjugate(g, Perm(3)), g);

  Perm k = P(3, "(1,2)");
  Perm c = conjugate(g, k);
  // k^-1 g k computed from image tables directly
  Perm expected = inverse(k) * g * k;
  EXPECT_EQ(c, expected);
  EXPECT_EQ(c, P(3, "(1,3,2)"));
}

TEST(PermTest, ConjugationPreservesCycleType)
{
  Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    Perm g = test::random_perm(10, rng), k = test::random_perm(10, rng);
    EXPECT_EQ(cycle_type(conjugate(g, k)), cycle_type(g));
  }
}

TEST(PermTest, CycleTypeAndOrder)
{
  Perm c = P(5, "(1,2,3,4,5)");
  EXPECT_TRUE(is_full_cycle(c));
  EXPECT_EQ(element_order(c), 5u);

  Perm d = P(5, "(1,2)(3,4,5)");
  EXPECT_FALSE(is_full_cycle(d));
  EXPECT_EQ(element_order(d), 6u);
  EXPECT_EQ(cycle_type(d).lengths, (std::vector<std::size_t>{3, 2}));

  Perm id(1);
  EXPECT_TRUE(is_full_cycle(id));
  EXPECT_EQ(element_order(id), 1u);
}

TEST(PermTest, ElementOrderIsLeastPower)
{
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    Perm g = test::random_perm(9, rng);
    std::uint64_t m = 1;
    Perm x = g;
    while (!x.is_identity()) {
      x = x * g;
      ++m;
    }
    EXPECT_EQ(element_order(g), m);
  }
}

TEST(PermTest, InverseOfProduct)
{
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    Perm g = test::random_perm(8, rng), h = test::random_perm(8, rng);
    EXPECT_EQ(inverse(g * h), inverse(h) * inverse(g));
    EXPECT_TRUE((g * inverse(g)).is_identity());
  }
}

TEST(PermTest, PowHandlesNegativeExponents)
{
  Perm g = P(6, "(1,2,3,4,5,6)");
  EXPECT_EQ(g.pow(-1), ~g);
  EXPECT_EQ(g.pow(6), Perm(6));
  EXPECT_EQ(g.pow(2), g * g);
  EXPECT_EQ(g.pow(-4), g.pow(2));
}

TEST(PermTest, ParseAndFormat)
{
  Perm g = parse_cycles("n=3: (1,2,3)");
  EXPECT_EQ(g[0], 1u);
  EXPECT_EQ(g[1], 2u);
  EXPECT_EQ(g[2], 0u);

  EXPECT_TRUE(parse_cycles("n=5: ()").is_identity());
  EXPECT_EQ(parse_cycles("n=5: ()").degree(), 5u);

  EXPECT_EQ(format_cycles(P(6, "(4,5)(3,1,2)")), "n=6: (1,2,3)(4,5)");
  EXPECT_EQ(format_cycle_string(Perm(4)), "()");
}

TEST(PermTest, ParseErrors)
{
  auto kind_of = [](auto fn) {
    try {
      fn();
    } catch (ParseError const &e) {
      return e.kind();
    }
    ADD_FAILURE() << "no ParseError";
    return ParseError::Kind::Malformed;
  };
  EXPECT_EQ(kind_of([] { parse_cycles("n=4: (1,2)(1,3)"); }), ParseError::Kind::RepeatedPoint);
  EXPECT_EQ(kind_of([] { parse_cycles("n=4: (1,5)"); }), ParseError::Kind::OutOfRange);
  EXPECT_EQ(kind_of([] { parse_cycles("n=4: (1,2"); }), ParseError::Kind::Malformed);
  EXPECT_EQ(kind_of([] { parse_cycles("(1,2)"); }), ParseError::Kind::Malformed);
  EXPECT_EQ(kind_of([] { parse_cycles("n=0: ()"); }), ParseError::Kind::Malformed);
  EXPECT_EQ(kind_of([] { Perm({0, 0, 1}); }), ParseError::Kind::RepeatedPoint);
}

TEST(PermTest, FormatParseRoundTrip)
{
  Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    std::size_t n = 1 + rng.below(12);
    Perm g = test::random_perm(n, rng);
    EXPECT_EQ(parse_cycles(format_cycles(g)), g);
  }
}

TEST(PermTest, CyclesStartAtSmallestPoint)
{
  auto cs = cycles(P(7, "(5,3)(7,2,6)"));
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_EQ(cs[0], (std::vector<point_t>{1, 5, 6}));
  EXPECT_EQ(cs[1], (std::vector<point_t>{2, 4}));
}
