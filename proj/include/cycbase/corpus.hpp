#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "families.hpp"
#include "group.hpp"
#include "oracle.hpp"

namespace cycbase {

struct CorpusEntry {
  std::string name;
  std::string family; // "cyclic", "affine", "symalt", "projective", "sporadic", "wreath", ...
  Group group;
  bool enumerable = true; // false for fixtures above the enumeration cap
  bool twisted = false;
};

struct Corpus {
  std::string profile;
  std::vector<CorpusEntry> entries;

  CorpusEntry const *find(std::string_view name) const
  {
    for (auto const &e : entries)
      if (e.name == name)
        return &e;
    return nullptr;
  }
};

/// Action of G by conjugation on the G-class of x (which must be small).
inline Group conjugation_action(Group const &g, Perm const &x)
{
  std::vector<Perm> pts{x};
  std::unordered_map<Perm, point_t, PermHash> index{{x, 0}};
  for (std::size_t q = 0; q < pts.size(); ++q)
    for (auto const &s : g.generators()) {
      Perm y = conjugate(pts[q], s);
      if (index.emplace(y, static_cast<point_t>(pts.size())).second)
        pts.push_back(std::move(y));
    }
  std::vector<Perm> gens;
  for (auto const &s : g.generators()) {
    std::vector<point_t> imgs(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
      imgs[i] = index.at(conjugate(pts[i], s));
    gens.emplace_back(std::move(imgs), unchecked);
  }
  return Group(pts.size(), std::move(gens));
}

/// A acting simultaneously on two copies of its domain, together with the
/// swap of the copies (A x C_2 with the diagonal kernel).
inline Group diagonal_double(Group const &a)
{
  std::size_t m = a.degree();
  std::vector<Perm> gens;
  for (auto const &g : a.generators()) {
    std::vector<point_t> imgs(2 * m);
    for (point_t x = 0; x < m; ++x) {
      imgs[x] = g[x];
      imgs[m + x] = static_cast<point_t>(m + g[x]);
    }
    gens.emplace_back(std::move(imgs), unchecked);
  }
  std::vector<point_t> swap(2 * m);
  for (point_t x = 0; x < m; ++x) {
    swap[x] = static_cast<point_t>(m + x);
    swap[m + x] = x;
  }
  gens.emplace_back(std::move(swap), unchecked);
  return Group(2 * m, std::move(gens));
}

namespace detail {

inline Perm seeded_perm(std::size_t n, std::uint64_t seed)
{
  Rng rng(seed);
  std::vector<point_t> imgs(n);
  for (point_t i = 0; i < n; ++i)
    imgs[i] = i;
  for (std::size_t i = n; i > 1; --i)
    std::swap(imgs[i - 1], imgs[rng.below(i)]);
  return Perm(std::move(imgs), unchecked);
}

} // namespace detail

/// Deterministic fixture lists. "tiny": degree <= 10. "paper-cases": tiny
/// plus degree 11 and 12 fixtures, degree 14 and 15 feasible wreaths and the
/// non-enumerable M23.
inline Corpus generate_corpus(std::string_view profile)
{
  if (profile != "tiny" && profile != "paper-cases")
    throw ArgumentError("unknown corpus profile: " + std::string(profile));
  Corpus c;
  c.profile = std::string(profile);
  auto add = [&](std::string name, std::string family, Group g, bool enumerable = true) {
    c.entries.push_back({std::move(name), std::move(family), std::move(g), enumerable, false});
  };
  auto n = [](std::string base, std::size_t k) { return base + "_" + std::to_string(k); };

  for (std::size_t k = 2; k <= 10; ++k)
    add(n("C", k), "cyclic", cyclic_group(k));
  for (std::size_t k = 3; k <= 10; ++k)
    add(n("D", k), "cyclic", dihedral_group(k));
  for (std::size_t k : {4, 6, 8, 9, 10})
    add(n("Hol", k), "cyclic", holomorph_cyclic(k));
  for (std::uint32_t p : {5, 7})
    add(n("AGL1", p), "affine", affine_line_group(p));
  for (std::uint32_t q : {4, 8, 9})
    add(n("AffLine", q), "affine", affine_line_group(q));
  for (std::size_t k = 3; k <= 9; ++k)
    add(n("Sym", k), "symalt", symmetric_group(k));
  for (std::size_t k = 3; k <= 9; ++k)
    add(n("Alt", k), "symalt", alternating_group(k));

  add("PGL2_4", "projective", projective_group(2, 4));
  add("PGL2_5", "projective", projective_group(2, 5));
  add("PSL2_5", "projective", derived_subgroup(projective_group(2, 5)));
  add("PGL2_7", "projective", projective_group(2, 7));
  add("PSL2_7", "projective", derived_subgroup(projective_group(2, 7)));
  add("PGL2_8", "projective", projective_group(2, 8));
  add("PGammaL2_8", "projective", projective_group(2, 8, true));
  add("PGL3_2", "projective", projective_group(3, 2));
  add("PGL2_9", "projective", projective_group(2, 9));
  add("PSL2_9", "projective", derived_subgroup(projective_group(2, 9)));
  add("PGammaL2_9", "projective", projective_group(2, 9, true));

  add("Sym3wrC2", "wreath", wreath_product(symmetric_group(3), cyclic_group(2)));
  add("C3wrC2", "wreath", wreath_product(cyclic_group(3), cyclic_group(2)));
  add("C2wrC3", "wreath", wreath_product(cyclic_group(2), cyclic_group(3)));
  add("Sym2wrSym3", "wreath", wreath_product(symmetric_group(2), symmetric_group(3)));
  add("Sym2wrC4", "wreath", wreath_product(symmetric_group(2), cyclic_group(4)));
  add("C4wrC2", "wreath", wreath_product(cyclic_group(4), cyclic_group(2)));
  add("Sym4wrC2", "wreath", wreath_product(symmetric_group(4), cyclic_group(2)));
  add("Alt4wrC2", "wreath", wreath_product(alternating_group(4), cyclic_group(2)));
  add("Sym3wrC3", "wreath", wreath_product(symmetric_group(3), cyclic_group(3)));
  add("C3wrC3", "wreath", wreath_product(cyclic_group(3), cyclic_group(3)));
  add("Sym5wrC2", "wreath", wreath_product(symmetric_group(5), cyclic_group(2)));
  add("Alt5wrC2", "wreath", wreath_product(alternating_group(5), cyclic_group(2)));
  add("AGL1_5wrC2", "wreath", wreath_product(affine_line_group(5), cyclic_group(2)));
  add("C5wrC2", "wreath", wreath_product(cyclic_group(5), cyclic_group(2)));
  add("D5wrC2", "wreath", wreath_product(dihedral_group(5), cyclic_group(2)));
  add("PGL2_4wrC2", "wreath", wreath_product(projective_group(2, 4), cyclic_group(2)));
  add("Sym2wrD5", "wreath", wreath_product(symmetric_group(2), dihedral_group(5)));
  add("Sym2wrSym5", "wreath", wreath_product(symmetric_group(2), symmetric_group(5)));
  add("Sym5xC2", "diagonal", diagonal_double(symmetric_group(5)));
  add("Alt5xC2", "diagonal", diagonal_double(alternating_group(5)));
  add("PGL2_4xC2", "diagonal", diagonal_double(projective_group(2, 4)));
  // regular Sym(3): the minimal block system is not normal
  add("Sym3reg", "regular", Group(6, {parse_cycle_string(6, "(1,2)(3,5)(4,6)"),
                                      parse_cycle_string(6, "(1,3,4)(2,6,5)")}));

  // twisted conjugates of a selection of the above
  std::vector<std::string> to_twist = {"C_6",       "D_8",     "Hol_10",  "Sym_6",
                                       "PGL2_5",    "PGL2_9",  "Sym5wrC2", "Sym5xC2",
                                       "C2wrC3",    "Sym4wrC2", "AGL1_7",  "PGL3_2"};
  for (std::size_t i = 0; i < to_twist.size(); ++i) {
    auto const *e = c.find(to_twist[i]);
    Perm x = detail::seeded_perm(e->group.degree(), 1000 + i);
    c.entries.push_back({e->name + "^t", e->family, conjugate_group(e->group, x), true, true});
  }

  if (profile == "paper-cases") {
    add("Hol_11", "affine", holomorph_cyclic(11));
    add("PSL2_11_on_11", "sporadic", psl2_11_on_11());
    add("M11", "sporadic", mathieu11());
    add("C_12", "cyclic", cyclic_group(12));
    add("D_12", "cyclic", dihedral_group(12));
    add("PGL2_11", "projective", projective_group(2, 11));
    add("Alt5_on_12", "regular", conjugation_action(alternating_group(5), full_cycle(5)));
    add("Sym3wrC4", "wreath", wreath_product(symmetric_group(3), cyclic_group(4)));
    add("Sym4wrC3", "wreath", wreath_product(symmetric_group(4), cyclic_group(3)));
    add("PGL3_2wrC2", "wreath", wreath_product(projective_group(3, 2), cyclic_group(2)));
    add("Sym5wrC3", "wreath", wreath_product(symmetric_group(5), cyclic_group(3)), false);
    add("M23", "sporadic", mathieu23(), false);
  }
  return c;
}

} // namespace cycbase
