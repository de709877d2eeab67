#pragma once

#include <string>
#include <vector>

#include "cycbase/cycbase.hpp"
#include "test_util.hpp"

namespace cycbase::test {

/// The full cycle (δ, γ) -> (δ, γ+1), and (δ, b-1) -> (δ+1, 0), on Δ×Γ with
/// |Δ| = m, |Γ| = b; its b-th power generates the block restrictions.
inline Perm straight_cycle(std::size_t m, std::size_t b)
{
  std::vector<point_t> imgs(m * b);
  for (std::size_t g = 0; g < b; ++g)
    for (std::size_t d = 0; d < m; ++d)
      imgs[g * m + d] = static_cast<point_t>(g + 1 < b ? (g + 1) * m + d : (d + 1) % m);
  return Perm(std::move(imgs));
}

/// A hypothesis instance of the wreath standardization: C on Δ×Γ with all
/// block restrictions equal to C0, B >= C^D, and A = N_Δ(C0).
struct StandardizeCase {
  Group c;
  Group b;
  Group a;
  std::size_t m;
};

/// Random element of A wr Sym(b) with the top part drawn from Sym(b) only
/// when `move_top`.
inline Perm random_wreath_element(Group const &a, std::size_t b, bool move_top, Rng &rng)
{
  std::size_t m = a.degree();
  std::vector<Perm> t;
  for (std::size_t j = 0; j < b; ++j)
    t.push_back(random_element(a, rng));
  Perm base = base_element(t);
  if (!move_top)
    return base;
  Perm top = random_perm(b, rng);
  std::vector<point_t> imgs(m * b);
  for (std::size_t j = 0; j < b; ++j)
    for (std::size_t d = 0; d < m; ++d)
      imgs[j * m + d] = static_cast<point_t>(top[static_cast<point_t>(j)] * m + d);
  return base * Perm(std::move(imgs));
}

struct StandardizeFamily {
  std::string name;
  std::size_t m;
  std::size_t b;
  Group c;          // untwisted C
  Group a;          // N_Δ(C0)
  Group top;        // B
  bool move_top;
};

inline std::vector<StandardizeFamily> standardize_families()
{
  return {
      {"C10 in Sym5 wr Sym2", 5, 2, Group(10, {straight_cycle(5, 2)}), holomorph_cyclic(5),
       symmetric_group(2), true},
      {"C12 in Sym3 wr Sym4", 3, 4, Group(12, {straight_cycle(3, 4)}), holomorph_cyclic(3),
       symmetric_group(4), true},
      {"C21 in Sym7 wr Sym3", 7, 3, Group(21, {straight_cycle(7, 3)}), holomorph_cyclic(7),
       symmetric_group(3), true},
      {"C8 in Sym4 wr Sym2", 4, 2, Group(8, {straight_cycle(4, 2)}), holomorph_cyclic(4),
       symmetric_group(2), true},
      {"Alt5 wr C3", 5, 3, wreath_product(alternating_group(5), cyclic_group(3)),
       symmetric_group(5), cyclic_group(3), false},
  };
}

inline StandardizeCase twisted_case(StandardizeFamily const &f, Rng &rng)
{
  Perm x = random_wreath_element(f.a, f.b, f.move_top, rng);
  return {conjugate_group(f.c, x), f.top, f.a, f.m};
}

/// Groups feasible with respect to their minimal system, from the corpus and
/// a few larger wreath products.
inline std::vector<CorpusEntry> feasible_fixtures()
{
  std::vector<CorpusEntry> res;
  for (auto const &e : generate_corpus("paper-cases").entries)
    if (e.enumerable && feasible_system(e.group))
      res.push_back(e);
  return res;
}

} // namespace cycbase::test
