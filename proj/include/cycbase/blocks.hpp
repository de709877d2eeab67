#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "group.hpp"
#include "perm.hpp"

namespace cycbase {

/// Partition of a point set; parts sorted by their least element, each part
/// sorted ascending.
using Partition = std::vector<std::vector<point_t>>;

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n)
  {
    std::iota(parent_.begin(), parent_.end(), point_t{0});
  }

  point_t find(point_t x)
  {
    while (parent_[x] != x)
      x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  /// Merges; the smaller root survives. Returns false when already joined.
  bool unite(point_t a, point_t b)
  {
    a = find(a);
    b = find(b);
    if (a == b)
      return false;
    if (a > b)
      std::swap(a, b);
    parent_[b] = a;
    return true;
  }

  Partition parts()
  {
    std::size_t n = parent_.size();
    std::vector<std::int64_t> slot(n, -1);
    Partition res;
    for (point_t x = 0; x < n; ++x) {
      point_t r = find(x);
      if (slot[r] < 0) {
        slot[r] = static_cast<std::int64_t>(res.size());
        res.emplace_back();
      }
      res[static_cast<std::size_t>(slot[r])].push_back(x);
    }
    return res;
  }

 private:
  std::vector<point_t> parent_;
};

} // namespace detail

inline Partition orbits(std::size_t n, std::vector<Perm> const &gens)
{
  detail::UnionFind uf(n);
  for (auto const &g : gens)
    for (point_t x = 0; x < n; ++x)
      uf.unite(x, g[x]);
  return uf.parts();
}

inline Partition orbits(Group const &g) { return orbits(g.degree(), g.generators()); }

inline bool is_transitive(Group const &g) { return orbits(g).size() == 1; }

/// Equal-size partition of {0..n-1}; blocks sorted by least point. A single
/// block of size n stands for "primitive, no proper blocks".
class BlockSystem {
 public:
  BlockSystem() = default;

  explicit BlockSystem(Partition blocks) : blocks_(std::move(blocks))
  {
    std::sort(blocks_.begin(), blocks_.end());
    if (blocks_.empty() || blocks_[0].empty())
      throw InvalidBlocks("empty block system");
    std::size_t m = blocks_[0].size(), n = m * blocks_.size();
    block_of_.assign(n, kNone);
    for (std::size_t j = 0; j < blocks_.size(); ++j) {
      auto &blk = blocks_[j];
      std::sort(blk.begin(), blk.end());
      if (blk.size() != m)
        throw InvalidBlocks("blocks of unequal size");
      for (point_t x : blk) {
        if (x >= n || block_of_[x] != kNone)
          throw InvalidBlocks("blocks do not partition the domain");
        block_of_[x] = static_cast<std::uint32_t>(j);
      }
    }
  }

  /// The one-block system on n points.
  static BlockSystem single(std::size_t n)
  {
    std::vector<point_t> all(n);
    std::iota(all.begin(), all.end(), point_t{0});
    return BlockSystem(Partition{std::move(all)});
  }

  std::size_t degree() const noexcept { return block_of_.size(); }
  std::size_t block_size() const noexcept { return blocks_[0].size(); }
  std::size_t count() const noexcept { return blocks_.size(); }
  bool is_single() const noexcept { return blocks_.size() == 1; }

  std::uint32_t block_of(point_t x) const { return block_of_[x]; }
  std::vector<point_t> const &block(std::size_t j) const { return blocks_[j]; }
  Partition const &blocks() const noexcept { return blocks_; }

  /// Position of x inside its (sorted) block.
  std::size_t position(point_t x) const
  {
    auto const &blk = blocks_[block_of_[x]];
    return static_cast<std::size_t>(std::lower_bound(blk.begin(), blk.end(), x) - blk.begin());
  }

  /// Induced permutation of the blocks; throws InvalidBlocks if g does not
  /// preserve the system.
  Perm induced(Perm const &g) const
  {
    if (g.degree() != degree())
      throw DegreeError("induced: degree mismatch");
    std::vector<point_t> imgs(count());
    std::vector<bool> hit(count(), false);
    for (std::size_t j = 0; j < count(); ++j) {
      auto img = block_of_[g[blocks_[j][0]]];
      for (point_t x : blocks_[j])
        if (block_of_[g[x]] != img)
          throw InvalidBlocks("block system not invariant");
      if (hit[img])
        throw InvalidBlocks("block system not invariant");
      hit[img] = true;
      imgs[j] = img;
    }
    return Perm(std::move(imgs), unchecked);
  }

  friend bool operator==(BlockSystem const &a, BlockSystem const &b)
  {
    return a.blocks_ == b.blocks_;
  }

 private:
  static constexpr std::uint32_t kNone = static_cast<std::uint32_t>(-1);
  Partition blocks_;
  std::vector<std::uint32_t> block_of_;
};

/// Finest K-invariant partition in which 0 and beta share a part (Atkinson).
inline Partition minimal_block_with(Group const &k, point_t alpha, point_t beta)
{
  std::size_t n = k.degree();
  detail::UnionFind uf(n);
  std::vector<std::pair<point_t, point_t>> queue;
  if (uf.unite(alpha, beta))
    queue.emplace_back(alpha, beta);
  for (std::size_t q = 0; q < queue.size(); ++q) {
    auto [a, b] = queue[q];
    for (auto const &g : k.generators()) {
      point_t x = g[a], y = g[b];
      if (uf.unite(x, y))
        queue.emplace_back(x, y);
    }
  }
  return uf.parts();
}

/// A system of minimal blocks of size > 1: among the systems generated by the
/// pairs {0, beta}, one with smallest block size, ties broken by the
/// lexicographically least block through 0. Primitive groups yield the
/// one-block system.
inline BlockSystem minimal_block_system(Group const &k)
{
  std::size_t n = k.degree();
  if (!is_transitive(k))
    throw NotTransitive("minimal_block_system: group is not transitive");
  if (n == 1)
    return BlockSystem::single(1);
  std::optional<Partition> best;
  std::size_t best_size = n;
  for (point_t beta = 1; beta < n; ++beta) {
    auto parts = minimal_block_with(k, 0, beta);
    auto const &blk = parts[0];
    if (blk.size() == n)
      continue;
    if (!best || blk.size() < best_size ||
        (blk.size() == best_size && blk < (*best)[0])) {
      best_size = blk.size();
      best = std::move(parts);
    }
  }
  if (!best)
    return BlockSystem::single(n);
  return BlockSystem(std::move(*best));
}

/// K-invariant check for every generator.
inline void check_invariant(Group const &k, BlockSystem const &d)
{
  if (k.degree() != d.degree())
    throw DegreeError("block system degree mismatch");
  for (auto const &g : k.generators())
    d.induced(g);
}

/// The homomorphism K -> K^D as "apply, then read the induced block action".
struct BlockHom {
  BlockSystem system;

  Perm operator()(Perm const &g) const { return system.induced(g); }
};

inline std::pair<BlockHom, Group> action_on_blocks(Group const &k, BlockSystem const &d)
{
  check_invariant(k, d);
  std::vector<Perm> gens;
  for (auto const &g : k.generators())
    gens.push_back(d.induced(g));
  return {BlockHom{d}, Group(d.count(), std::move(gens))};
}

/// K acting on Ω ∪ D at once. A chain of the combined action whose base is
/// taken from the block points gives the image K^D, the kernel K_D, and
/// lifts of image elements back to K.
class BlockQuotient {
 public:
  BlockQuotient(Group k, BlockSystem d) : k_(std::move(k)), d_(std::move(d))
  {
    check_invariant(k_, d_);
    std::size_t n = k_.degree(), b = d_.count();
    auto const &gens = k_.generators();
    combined_.reserve(gens.size());
    image_gens_.reserve(gens.size());
    for (auto const &g : gens) {
      Perm q = d_.induced(g);
      std::vector<point_t> imgs(n + b);
      for (point_t x = 0; x < n; ++x)
        imgs[x] = g[x];
      for (point_t j = 0; j < b; ++j)
        imgs[n + j] = static_cast<point_t>(n + q[j]);
      combined_.emplace_back(std::move(imgs), unchecked);
      image_gens_.push_back(std::move(q));
    }
    Bsgs::Options opts;
    opts.domain_lo = static_cast<point_t>(n);
    chain_.emplace(n + b, combined_, opts);

    // image chain: project the strong generators onto the block points
    std::vector<point_t> base;
    for (point_t p : chain_->base())
      base.push_back(p - static_cast<point_t>(n));
    std::vector<Perm> sgs;
    for (auto const &s : chain_->strong_generators())
      sgs.push_back(project(s));
    image_ = Group::from_bsgs(Bsgs::from_strong_generators(b, base, sgs));
  }

  Group const &group() const noexcept { return k_; }
  BlockSystem const &system() const noexcept { return d_; }

  /// K^D.
  Group const &image() const noexcept { return image_; }

  /// K_D (computed on first use).
  Group const &kernel() const
  {
    if (!kernel_) {
      std::size_t n = k_.degree();
      std::vector<Perm> res;
      for (auto const &r : chain_->kernel_generators())
        res.push_back(restrict_to_domain(r));
      kernel_ = normal_closure(k_, Group(n, std::move(res)));
    }
    return *kernel_;
  }

  /// Some k in K with k^D = q; ArgumentError if q is not in K^D.
  Perm lift(Perm const &q) const
  {
    std::size_t n = k_.degree(), b = d_.count();
    if (q.degree() != b)
      throw DegreeError("lift: degree mismatch");
    std::vector<point_t> imgs(n + b);
    std::iota(imgs.begin(), imgs.end(), point_t{0});
    for (point_t j = 0; j < b; ++j)
      imgs[n + j] = static_cast<point_t>(n + q[j]);
    auto [r, level] = chain_->strip(Perm(std::move(imgs), unchecked));
    for (point_t j = 0; j < b; ++j)
      if (r[static_cast<point_t>(n + j)] != n + j)
        throw ArgumentError("lift: element not in the block image");
    (void)level;
    // r = (1 + q) x^-1 with x in the combined group, and r is trivial on D
    return restrict_to_domain(~r);
  }

  /// {k in K : k^D in mq}.
  Group preimage(Group const &mq) const
  {
    if (mq.degree() != d_.count())
      throw DegreeError("preimage: degree mismatch");
    std::vector<Perm> gens = kernel().generators();
    for (auto const &q : mq.generators())
      gens.push_back(lift(q));
    return Group(k_.degree(), std::move(gens));
  }

  /// Setwise stabilizer of block j.
  Group block_stabilizer(std::size_t j) const
  {
    return preimage(pointwise_stabilizer(image_, {static_cast<point_t>(j)}));
  }

 private:
  Perm project(Perm const &s) const
  {
    std::size_t n = k_.degree(), b = d_.count();
    std::vector<point_t> imgs(b);
    for (point_t j = 0; j < b; ++j)
      imgs[j] = s[static_cast<point_t>(n + j)] - static_cast<point_t>(n);
    return Perm(std::move(imgs), unchecked);
  }

  Perm restrict_to_domain(Perm const &s) const
  {
    std::size_t n = k_.degree();
    return Perm(std::vector<point_t>(s.images().begin(), s.images().begin() + n), unchecked);
  }

  Group k_;
  BlockSystem d_;
  std::vector<Perm> combined_;
  std::vector<Perm> image_gens_;
  std::optional<Bsgs> chain_;
  Group image_;
  mutable std::optional<Group> kernel_;
};

inline Group kernel_of_blocks(Group const &k, BlockSystem const &d)
{
  if (d.is_single()) {
    check_invariant(k, d);
    return k;
  }
  return BlockQuotient(k, d).kernel();
}

/// Blocks are exactly the orbits of the kernel.
inline bool is_normal_system(Group const &k, BlockSystem const &d)
{
  return orbits(kernel_of_blocks(k, d)) == d.blocks();
}

inline Group preimage_under_blocks(Group const &k, BlockHom const &hom, Group const &mq)
{
  BlockQuotient bq(k, hom.system);
  for (auto const &q : mq.generators())
    if (!bq.image().contains(q))
      throw ArgumentError("preimage: subgroup not inside the block image");
  return bq.preimage(mq);
}

/// Restricts the generators of a group stabilizing `points` setwise to those
/// points, renumbered in ascending order.
inline Group restrict_to(Group const &g, std::vector<point_t> const &points)
{
  std::vector<point_t> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::int64_t> pos(g.degree(), -1);
  for (std::size_t i = 0; i < sorted.size(); ++i)
    pos[sorted[i]] = static_cast<std::int64_t>(i);
  std::vector<Perm> gens;
  for (auto const &s : g.generators()) {
    std::vector<point_t> imgs(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      auto p = pos[s[sorted[i]]];
      if (p < 0)
        throw ArgumentError("restrict_to: point set not invariant");
      imgs[i] = static_cast<point_t>(p);
    }
    gens.emplace_back(std::move(imgs), unchecked);
  }
  return Group(sorted.size(), std::move(gens));
}

/// K^Δ for block j, on |Δ| points in ascending order of Δ.
inline Group restriction_to_block(Group const &k, BlockSystem const &d, std::size_t j)
{
  if (j >= d.count())
    throw ArgumentError("restriction_to_block: no such block");
  if (d.is_single()) {
    check_invariant(k, d);
    return k;
  }
  BlockQuotient bq(k, d);
  return restrict_to(bq.block_stabilizer(j), d.block(j));
}

} // namespace cycbase
