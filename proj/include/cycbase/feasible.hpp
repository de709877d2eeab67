#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "blocks.hpp"
#include "families.hpp"
#include "group.hpp"
#include "primitive.hpp"

namespace cycbase {

/// Orbits of S on the pairs Δ×Γ; pair (Δ[i], Γ[j]) is index i*|Γ| + j.
inline Partition pair_orbits(Group const &s, std::vector<point_t> const &delta,
                             std::vector<point_t> const &gamma)
{
  std::size_t m = delta.size(), k = gamma.size();
  std::vector<std::int64_t> pd(s.degree(), -1), pg(s.degree(), -1);
  for (std::size_t i = 0; i < m; ++i)
    pd[delta[i]] = static_cast<std::int64_t>(i);
  for (std::size_t j = 0; j < k; ++j)
    pg[gamma[j]] = static_cast<std::int64_t>(j);
  detail::UnionFind uf(m * k);
  for (auto const &g : s.generators())
    for (std::size_t i = 0; i < m; ++i) {
      auto di = pd[g[delta[i]]];
      if (di < 0)
        throw ArgumentError("pair_orbits: Δ is not S-invariant");
      for (std::size_t j = 0; j < k; ++j) {
        auto gj = pg[g[gamma[j]]];
        if (gj < 0)
          throw ArgumentError("pair_orbits: Γ is not S-invariant");
        uf.unite(static_cast<point_t>(i * k + j), static_cast<point_t>(di * k + gj));
      }
    }
  return uf.parts();
}

/// The bijection f: Δ -> Γ whose graph is the smaller of exactly two S-orbits
/// on Δ×Γ, as f[i] = image of Δ[i]; nullopt otherwise.
inline std::optional<std::vector<point_t>> block_bijection(Group const &s,
                                                           std::vector<point_t> const &delta,
                                                           std::vector<point_t> const &gamma)
{
  if (delta == gamma)
    throw ArgumentError("block_bijection: blocks must be distinct");
  auto orbs = pair_orbits(s, delta, gamma);
  if (orbs.size() != 2 || delta.size() != gamma.size())
    return std::nullopt;
  auto const &small = orbs[0].size() <= orbs[1].size() ? orbs[0] : orbs[1];
  std::size_t m = delta.size();
  if (small.size() != m)
    return std::nullopt;
  std::vector<point_t> f(m);
  std::vector<bool> hit_row(m, false), hit_col(m, false);
  for (point_t idx : small) {
    std::size_t i = idx / m, j = idx % m;
    if (hit_row[i] || hit_col[j])
      return std::nullopt;
    hit_row[i] = hit_col[j] = true;
    f[i] = gamma[j];
  }
  return f;
}

/// Data attached to a feasible group K with respect to a minimal normal
/// block system D: S = soc(K_D), the partitions E and E' of the blocks, and
/// for every block Γ the bijection from Γ onto the first block of its
/// E-class.
struct FeasibleContext {
  Group k;
  BlockSystem d;
  Group kernel;
  Group s;
  std::vector<std::vector<std::size_t>> e;       // E-classes of block indices
  std::vector<std::vector<std::size_t>> eprime;  // E'-classes
  std::vector<std::size_t> class_of;             // block index -> E-class
  /// to_class_rep[j][i]: image in the first block of j's class of
  /// block(j)[i] (the inverse of the block bijection f).
  std::vector<std::vector<point_t>> to_class_rep;

  bool e_equals_eprime() const { return e == eprime; }
};

/// S = soc(K_D) as the solvable residual of K_D, checked afterwards: orbits
/// of S must be the blocks, and each S^Δ must have the socle order of K^Δ's
/// class.
inline Group socle_of_kernel(Group const &kernel, BlockSystem const &d,
                             PrimitiveClass const &block_class)
{
  Group s = solvable_residual(kernel);
  if (orbits(s) != d.blocks())
    throw FeasibilityViolation("orbits of the kernel socle differ from the blocks");
  order_t want = block_class.socle_order();
  for (std::size_t j = 0; j < d.count(); ++j) {
    auto got = restrict_to(s, d.block(j)).order();
    if (got != want)
      throw FeasibilityViolation("socle restriction to block " + std::to_string(j + 1) +
                                 " has order " + got.str() + ", expected " + want.str());
  }
  return s;
}

inline Group socle_of_kernel(Group const &k, BlockSystem const &d)
{
  auto kd = restriction_to_block(k, d, 0);
  auto cls = classify_primitive(kd);
  if (is_solvable(kd) || cls.kind == PrimitiveClass::Kind::NoRegularCyclic)
    throw FeasibilityViolation("K is not feasible with respect to the block system");
  return socle_of_kernel(kernel_of_blocks(k, d), d, cls);
}

/// Blocks grouped by existence of a bijection (the relation of S-conjugate
/// point stabilizers). Fills `to_rep` with the map of each block onto its
/// class representative.
inline std::vector<std::vector<std::size_t>>
compute_E(Group const &s, BlockSystem const &d, std::vector<std::vector<point_t>> *to_rep = nullptr)
{
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::vector<point_t>> maps(d.count());
  for (std::size_t j = 0; j < d.count(); ++j) {
    bool placed = false;
    for (auto &cls : classes) {
      auto const &rep = d.block(cls[0]);
      auto f = block_bijection(s, rep, d.block(j));
      if (!f)
        continue;
      // invert f: rep -> block j
      auto &mj = maps[j];
      mj.assign(d.block_size(), 0);
      for (std::size_t i = 0; i < rep.size(); ++i)
        mj[d.position((*f)[i])] = rep[i];
      cls.push_back(j);
      placed = true;
      break;
    }
    if (!placed) {
      classes.push_back({j});
      maps[j] = d.block(j);
    }
  }
  if (to_rep)
    *to_rep = std::move(maps);
  return classes;
}

/// Δ and Γ share a class iff S acting trivially on Δ acts trivially on Γ,
/// i.e. |S^(Δ∪Γ)| = |S^Δ|.
inline std::vector<std::vector<std::size_t>> compute_Eprime(Group const &s, BlockSystem const &d)
{
  std::vector<order_t> single(d.count());
  for (std::size_t j = 0; j < d.count(); ++j)
    single[j] = restrict_to(s, d.block(j)).order();
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t j = 0; j < d.count(); ++j) {
    bool placed = false;
    for (auto &cls : classes) {
      auto pts = d.block(cls[0]);
      pts.insert(pts.end(), d.block(j).begin(), d.block(j).end());
      if (restrict_to(s, pts).order() == single[cls[0]]) {
        cls.push_back(j);
        placed = true;
        break;
      }
    }
    if (!placed)
      classes.push_back({j});
  }
  return classes;
}

inline FeasibleContext build_feasible_context(Group const &k, BlockSystem const &d,
                                              Group const &kernel, PrimitiveClass const &block_class)
{
  FeasibleContext ctx{k, d, kernel, socle_of_kernel(kernel, d, block_class), {}, {}, {}, {}};
  ctx.e = compute_E(ctx.s, d, &ctx.to_class_rep);
  ctx.eprime = compute_Eprime(ctx.s, d);
  ctx.class_of.assign(d.count(), 0);
  for (std::size_t c = 0; c < ctx.e.size(); ++c)
    for (std::size_t j : ctx.e[c])
      ctx.class_of[j] = c;
  return ctx;
}

inline FeasibleContext build_feasible_context(Group const &k, BlockSystem const &d)
{
  Group kernel = kernel_of_blocks(k, d);
  auto kd = restriction_to_block(k, d, 0);
  auto cls = classify_primitive(kd);
  if (is_solvable(kd) || cls.kind == PrimitiveClass::Kind::NoRegularCyclic)
    throw FeasibilityViolation("K is not feasible with respect to the block system");
  return build_feasible_context(k, d, kernel, cls);
}

/// The minimal system D when K is feasible with respect to it: transitive,
/// D minimal, normal and not a single block, K^Δ non-solvable with a regular
/// cyclic subgroup.
inline std::optional<BlockSystem> feasible_system(Group const &k, SearchOptions const &opts = {})
{
  if (!is_transitive(k))
    return std::nullopt;
  BlockSystem d = minimal_block_system(k);
  if (d.is_single() || !is_normal_system(k, d))
    return std::nullopt;
  Group kd = restriction_to_block(k, d, 0);
  if (is_solvable(kd))
    return std::nullopt;
  if (!find_regular_cyclic(kd, classify_primitive(kd), opts))
    return std::nullopt;
  return d;
}

/// The relabeling f*: Ω -> Δ×D, Δ the first block, stored as a permutation
/// of Ω sending γ in block j to j*|Δ| + (position of γ* in Δ).
struct WreathFrame {
  Perm relabel;
  std::vector<Perm> class_reps; // k_Λ per E-class (identity for Δ's class)
  std::size_t block_size = 0;
  std::size_t block_count = 0;
};

/// Checks that the kernel, conjugated by the frame, acts on every block of an
/// E-class by the same permutation of positions.
inline bool kernel_has_product_shape(FeasibleContext const &ctx, WreathFrame const &frame)
{
  std::size_t m = frame.block_size;
  for (auto const &x : ctx.kernel.generators()) {
    Perm y = conjugate(x, frame.relabel);
    for (auto const &cls : ctx.e) {
      std::size_t first = cls[0];
      for (std::size_t j : cls)
        for (std::size_t i = 0; i < m; ++i) {
          if (y[static_cast<point_t>(j * m + i)] / m != j)
            return false;
          if (y[static_cast<point_t>(j * m + i)] - j * m !=
              y[static_cast<point_t>(first * m + i)] - first * m)
            return false;
        }
    }
  }
  return true;
}

inline WreathFrame build_frame(FeasibleContext const &ctx)
{
  auto const &d = ctx.d;
  std::size_t n = d.degree(), m = d.block_size(), b = d.count();
  WreathFrame fr;
  fr.block_size = m;
  fr.block_count = b;

  // k_Λ: first element reached by breadth-first search on blocks from block 0
  std::vector<std::optional<Perm>> reach(b);
  reach[0] = Perm(n);
  std::vector<std::size_t> queue{0};
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (auto const &g : ctx.k.generators()) {
      auto j = d.block_of(g[d.block(queue[q])[0]]);
      if (!reach[j]) {
        reach[j] = *reach[queue[q]] * g;
        queue.push_back(j);
      }
    }
  fr.class_reps.assign(ctx.e.size(), Perm(n));
  std::vector<bool> have(ctx.e.size(), false);
  have[ctx.class_of[0]] = true;
  for (std::size_t j : queue) {
    auto c = ctx.class_of[j];
    if (!have[c]) {
      have[c] = true;
      fr.class_reps[c] = *reach[j];
    }
  }
  if (std::find(have.begin(), have.end(), false) != have.end())
    throw FrameError("K is not transitive on the blocks");

  // γ* = f_(Γ',Δ)(γ^(k_Λ^-1)) with Γ' the block of γ^(k_Λ^-1)
  std::vector<Perm> inv;
  for (auto const &kl : fr.class_reps)
    inv.push_back(~kl);
  std::vector<point_t> imgs(n);
  std::vector<bool> used(n, false);
  for (point_t x = 0; x < n; ++x) {
    auto j = d.block_of(x);
    point_t y = inv[ctx.class_of[j]][x];
    auto jy = d.block_of(y);
    if (ctx.class_of[jy] != ctx.class_of[0])
      throw FrameError("class representative does not reach the reference class");
    point_t star = ctx.to_class_rep[jy][d.position(y)];
    auto pos = d.position(star);
    if (d.block_of(star) != 0)
      throw FrameError("class bijection does not land in the reference block");
    auto label = static_cast<point_t>(j * m + pos);
    if (used[label])
      throw FrameError("relabeling is not a bijection");
    used[label] = true;
    imgs[x] = label;
  }
  fr.relabel = Perm(std::move(imgs), unchecked);

  Perm const &f = fr.relabel;
  BlockSystem product = [&] {
    Partition parts(b);
    for (std::size_t j = 0; j < b; ++j)
      for (std::size_t i = 0; i < m; ++i)
        parts[j].push_back(static_cast<point_t>(j * m + i));
    return BlockSystem(std::move(parts));
  }();
  for (auto const &g : ctx.k.generators()) {
    Perm y = conjugate(g, f);
    try {
      product.induced(y);
    } catch (InvalidBlocks const &) {
      throw FrameError("conjugated group does not preserve the product blocks");
    }
  }
  if (ctx.e_equals_eprime() && !kernel_has_product_shape(ctx, fr))
    throw FrameError("conjugated kernel sections are not constant on classes");
  return fr;
}

/// N*(H) wr K^D on Δ×D, point (δ, j) = j*|Δ| + δ.
inline Group build_Wstar(NormalizerTower const &tower, Group const &kq)
{
  if (kq.degree() == 1)
    return tower.nstar_h;
  return wreath_product(tower.nstar_h, kq);
}

/// Result of the wreath standardization: t as a block-wise family of
/// permutations of Δ, the group C0 on Δ, and the conjugated generators.
struct Standardized {
  std::vector<Perm> t;   // t[γ] in Sym(Δ)
  Group c0;
  Perm t_perm;           // the base-group element (t(γ))_γ on Δ×Γ
};

/// Section g(γ) in Sym(Δ) of g in Sym(Δ)wrSym(Γ): (δ,γ)^g = (δ^g(γ), γ^g).
inline Perm section(Perm const &g, std::size_t m, std::size_t gamma)
{
  std::vector<point_t> imgs(m);
  for (std::size_t i = 0; i < m; ++i)
    imgs[i] = static_cast<point_t>(g[static_cast<point_t>(gamma * m + i)] % m);
  return Perm(std::move(imgs), unchecked);
}

inline Perm top_action(Perm const &g, std::size_t m, std::size_t b)
{
  std::vector<point_t> imgs(b);
  for (std::size_t j = 0; j < b; ++j)
    imgs[j] = static_cast<point_t>(g[static_cast<point_t>(j * m)] / m);
  return Perm(std::move(imgs), unchecked);
}

inline Perm base_element(std::vector<Perm> const &t)
{
  std::size_t m = t[0].degree(), b = t.size();
  std::vector<point_t> imgs(m * b);
  for (std::size_t j = 0; j < b; ++j)
    for (std::size_t i = 0; i < m; ++i)
      imgs[j * m + i] = static_cast<point_t>(j * m + t[j][static_cast<point_t>(i)]);
  return Perm(std::move(imgs), unchecked);
}

/// Membership of g in A wr B on Δ×Γ.
inline bool in_wreath(Perm const &g, Group const &a, Group const &b)
{
  std::size_t m = a.degree(), nb = b.degree();
  BlockSystem product = [&] {
    Partition parts(nb);
    for (std::size_t j = 0; j < nb; ++j)
      for (std::size_t i = 0; i < m; ++i)
        parts[j].push_back(static_cast<point_t>(j * m + i));
    return BlockSystem(std::move(parts));
  }();
  try {
    product.induced(g);
  } catch (InvalidBlocks const &) {
    return false;
  }
  if (!b.contains(top_action(g, m, nb)))
    return false;
  for (std::size_t j = 0; j < nb; ++j)
    if (!a.contains(section(g, m, j)))
      return false;
  return true;
}

/// C on Δ×Γ with all block restrictions equal to C0: finds t in
/// Fun(Γ, N(C0)) with t C t^-1 <= C0 wr B, via t(γ) = c_γ(γ0) for c_γ
/// taking block γ0 = 0 to γ.
inline Standardized wreath_standardize(Group const &c, Group const &b, std::size_t m)
{
  std::size_t nb = b.degree(), n = c.degree();
  if (m * nb != n)
    throw ArgumentError("wreath_standardize: degree is not |Δ|*|Γ|");
  if (!is_transitive(c))
    throw ArgumentError("wreath_standardize: C is not transitive");
  Partition parts(nb);
  for (std::size_t j = 0; j < nb; ++j)
    for (std::size_t i = 0; i < m; ++i)
      parts[j].push_back(static_cast<point_t>(j * m + i));
  BlockSystem sys(std::move(parts));
  BlockQuotient bq(c, sys);
  for (auto const &g : c.generators())
    if (!b.contains(sys.induced(g)))
      throw StandardizeError("block action of C is not inside B");

  std::vector<Group> restr;
  for (std::size_t j = 0; j < nb; ++j)
    restr.push_back(restrict_to(bq.block_stabilizer(j), sys.block(j)));
  Group c0 = restr[0];
  for (std::size_t j = 1; j < nb; ++j) {
    if (restr[j].order() != c0.order())
      throw StandardizeError("block restrictions differ");
    for (auto const &g : restr[j].generators())
      if (!c0.contains(g))
        throw StandardizeError("block restrictions differ");
  }

  std::vector<std::optional<Perm>> cg(nb);
  cg[0] = Perm(n);
  std::vector<std::size_t> queue{0};
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (auto const &g : c.generators()) {
      auto j = sys.block_of(g[static_cast<point_t>(queue[q] * m)]);
      if (!cg[j]) {
        cg[j] = *cg[queue[q]] * g;
        queue.push_back(j);
      }
    }
  Standardized res;
  res.c0 = c0;
  for (std::size_t j = 0; j < nb; ++j)
    res.t.push_back(section(*cg[j], m, 0));
  res.t_perm = base_element(res.t);

  for (auto const &tj : res.t)
    for (auto const &g : c0.generators())
      if (!c0.contains(conjugate(g, ~tj)))
        throw StandardizeError("t(γ) does not normalize C0");
  Perm tinv = ~res.t_perm;
  for (auto const &g : c.generators())
    if (!in_wreath(res.t_perm * g * tinv, c0, b))
      throw StandardizeError("standardized generator is not in C0 wr B");
  return res;
}

} // namespace cycbase
