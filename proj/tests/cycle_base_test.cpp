#include <fstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace cycbase;
using cycbase::test::G;
using cycbase::test::P;

namespace {

json load_golden(std::string const &file)
{
  std::ifstream in(std::string(CYCBASE_GOLDEN_DIR) + "/" + file);
  EXPECT_TRUE(in.good()) << file;
  return json::parse(in);
}

void expect_base_invariants(Group const &k, CycleBaseResult const &r)
{
  EXPECT_LE(r.base.size(), euler_phi(k.degree()));
  for (auto const &c : r.base) {
    EXPECT_TRUE(is_full_cycle(c));
    EXPECT_TRUE(k.contains(c));
    EXPECT_TRUE(r.control.m.contains(c));
    EXPECT_EQ(element_order(c), k.degree());
  }
  for (std::size_t i = 0; i < r.base.size(); ++i)
    for (std::size_t j = i + 1; j < r.base.size(); ++j)
      EXPECT_FALSE(conjugating_element(k, r.base[i], r.base[j]));
}

} // namespace

TEST(CycleBaseTest, Examples)
{
  EXPECT_EQ(cycle_base(symmetric_group(6)).base.size(), 1u);
  auto c8 = cycle_base(cyclic_group(8));
  ASSERT_EQ(c8.base.size(), 1u);
  EXPECT_EQ(c8.base[0], full_cycle(8));
  EXPECT_TRUE(cycle_base(affine_line_group(8)).base.empty());
  EXPECT_EQ(cycle_base(alternating_group(5)).base.size(), 1u);
}

TEST(CycleBaseTest, CirculantExamples)
{
  EXPECT_EQ(circulant_representations(dihedral_group(5)).base.size(), 1u);
  EXPECT_TRUE(circulant_representations(Group::trivial(4)).base.empty());
  EXPECT_EQ(circulant_representations(symmetric_group(4)).base.size(), 1u);
}

TEST(CycleBaseTest, InvariantsOnCorpus)
{
  for (auto const &e : generate_corpus("tiny").entries) {
    auto r = cycle_base(e.group);
    expect_base_invariants(e.group, r);
    EXPECT_TRUE(r.verified) << e.name;
  }
}

TEST(CycleBaseTest, SamplingPathIsFlagged)
{
  CycleBaseOptions opts;
  opts.enumeration_cap = 10;
  auto r = cycle_base(mathieu11(), opts);
  EXPECT_EQ(r.method, "sampling");
  EXPECT_FALSE(r.verified);
  EXPECT_EQ(r.base.size(), 1u);
  expect_base_invariants(mathieu11(), r);
}

TEST(CycleBaseTest, SeveralClasses)
{
  // Hol(8) and Alt(9) have two classes each
  EXPECT_EQ(cycle_base(holomorph_cyclic(8)).base.size(), 2u);
  EXPECT_EQ(cycle_base(alternating_group(9)).base.size(), 2u);
}

TEST(OracleTest, Enumeration)
{
  EXPECT_EQ(enumerate_group(Group::trivial(3), 10).size(), 1u);
  EXPECT_EQ(enumerate_group(symmetric_group(4), 100).size(), 24u);
  EXPECT_EQ(enumerate_group(alternating_group(5), 100).size(), 60u);
  EXPECT_THROW(enumerate_group(symmetric_group(6), 100), CapError);
}

TEST(OracleTest, CycExamples)
{
  EXPECT_EQ(oracle_cyc(symmetric_group(5), 1000).size(), 1u);
  auto c6 = oracle_cyc(cyclic_group(6), 100);
  ASSERT_EQ(c6.size(), 1u);
  EXPECT_EQ(c6[0].subgroups, 1u);
  EXPECT_TRUE(oracle_cyc(alternating_group(4), 100).empty());
}

TEST(OracleTest, ClassCountConjugationInvariant)
{
  Rng rng(5);
  for (auto const &e : generate_corpus("tiny").entries) {
    if (e.group.order() > 50000)
      continue;
    Group kt = conjugate_group(e.group, test::random_perm(e.group.degree(), rng));
    EXPECT_EQ(oracle_cyc(kt, 1000000).size(), oracle_cyc(e.group, 1000000).size()) << e.name;
  }
}

TEST(OracleTest, CorpusProfiles)
{
  auto tiny = generate_corpus("tiny");
  for (auto const &e : tiny.entries)
    EXPECT_LE(e.group.degree(), 10u);
  std::size_t transitive = 0;
  for (auto const &e : tiny.entries)
    transitive += is_transitive(e.group) && e.group.order() <= 1000000;
  EXPECT_GE(transitive, 60u);

  auto paper = generate_corpus("paper-cases");
  std::set<PrimitiveClass::Kind> kinds;
  for (auto const &e : paper.entries)
    if (e.enumerable && is_transitive(e.group) && minimal_block_system(e.group).is_single())
      kinds.insert(classify_primitive(e.group).kind);
  EXPECT_TRUE(kinds.count(PrimitiveClass::Kind::Affine));
  EXPECT_TRUE(kinds.count(PrimitiveClass::Kind::SymOrAlt));
  EXPECT_TRUE(kinds.count(PrimitiveClass::Kind::Projective));
  EXPECT_TRUE(kinds.count(PrimitiveClass::Kind::Sporadic));
  EXPECT_THROW(generate_corpus("huge"), ArgumentError);
}

TEST(OracleTest, TwistedEntriesKeepCounts)
{
  auto corpus = generate_corpus("tiny");
  for (auto const &e : corpus.entries) {
    if (!e.twisted)
      continue;
    auto const *orig = corpus.find(e.name.substr(0, e.name.size() - 2));
    ASSERT_NE(orig, nullptr);
    EXPECT_EQ(oracle_cyc(e.group, 1000000).size(), oracle_cyc(orig->group, 1000000).size());
  }
}

TEST(OracleTest, GoldenMatchesLiveOracle)
{
  auto golden = load_golden("oracle_paper_cases.json");
  ASSERT_EQ(golden["oracle_version"], kOracleVersion);
  auto corpus = generate_corpus("paper-cases");
  std::size_t seen = 0;
  for (auto const &ge : golden["entries"]) {
    auto const *e = corpus.find(ge["name"].get<std::string>());
    ASSERT_NE(e, nullptr) << ge["name"];
    EXPECT_EQ(ge["hash"], hex64(input_hash(e->group))) << e->name;
    auto live = oracle_to_json(oracle_cyc(e->group, 1000000));
    EXPECT_EQ(ge["classes"], live) << e->name;
    ++seen;
  }
  EXPECT_GE(seen, 60u);
}
