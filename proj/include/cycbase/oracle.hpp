#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "group.hpp"
#include "perm.hpp"

namespace cycbase {

inline constexpr int kOracleVersion = 1;

namespace detail {

/// Set of permutations of a fixed degree stored back to back in one array.
class FlatPermSet {
 public:
  explicit FlatPermSet(std::size_t degree) : n_(degree) { slots_.assign(64, kEmpty); }

  std::size_t size() const noexcept { return count_; }

  point_t const *at(std::size_t i) const noexcept { return data_.data() + i * n_; }

  Perm perm(std::size_t i) const
  {
    return Perm(std::vector<point_t>(at(i), at(i) + n_), unchecked);
  }

  /// Inserts; returns true when new.
  bool insert(point_t const *g)
  {
    if ((count_ + 1) * 2 > slots_.size())
      grow();
    std::size_t mask = slots_.size() - 1;
    for (std::size_t s = hash(g) & mask;; s = (s + 1) & mask) {
      if (slots_[s] == kEmpty) {
        slots_[s] = count_++;
        data_.insert(data_.end(), g, g + n_);
        return true;
      }
      if (std::equal(g, g + n_, at(slots_[s])))
        return false;
    }
  }

  bool contains(point_t const *g) const
  {
    std::size_t mask = slots_.size() - 1;
    for (std::size_t s = hash(g) & mask;; s = (s + 1) & mask) {
      if (slots_[s] == kEmpty)
        return false;
      if (std::equal(g, g + n_, at(slots_[s])))
        return true;
    }
  }

 private:
  static constexpr std::size_t kEmpty = static_cast<std::size_t>(-1);

  std::size_t hash(point_t const *g) const noexcept
  {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::size_t i = 0; i < n_; ++i) {
      h ^= g[i];
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }

  void grow()
  {
    slots_.assign(slots_.size() * 2, kEmpty);
    std::size_t mask = slots_.size() - 1;
    for (std::size_t i = 0; i < count_; ++i) {
      std::size_t s = hash(at(i)) & mask;
      while (slots_[s] != kEmpty)
        s = (s + 1) & mask;
      slots_[s] = i;
    }
  }

  std::size_t n_;
  std::size_t count_ = 0;
  std::vector<point_t> data_;
  std::vector<std::size_t> slots_;
};

/// All products of generators, by breadth-first closure. Uses nothing from
/// the stabilizer-chain code.
inline FlatPermSet closure(std::size_t n, std::vector<Perm> const &gens,
                           std::size_t cap)
{
  FlatPermSet set(n);
  std::vector<point_t> id(n);
  std::iota(id.begin(), id.end(), point_t{0});
  set.insert(id.data());
  std::vector<point_t> prod(n);
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (auto const &s : gens) {
      point_t const *g = set.at(i);
      for (std::size_t x = 0; x < n; ++x)
        prod[x] = s[g[x]];
      if (set.insert(prod.data()) && set.size() > cap)
        throw CapError("closure exceeded cap of " + std::to_string(cap) + " elements");
    }
  }
  return set;
}

} // namespace detail

/// Every element of G, identity first, in breadth-first order.
inline std::vector<Perm> enumerate_group(Group const &g, std::size_t cap)
{
  if (g.order() > cap)
    throw CapError("group of order " + g.order().str() + " exceeds cap " +
                   std::to_string(cap));
  auto set = detail::closure(g.degree(), g.generators(), cap);
  std::vector<Perm> res;
  res.reserve(set.size());
  for (std::size_t i = 0; i < set.size(); ++i)
    res.push_back(set.perm(i));
  return res;
}

/// Element count by closure alone (no stabilizer chain).
inline std::size_t closure_size(Group const &g, std::size_t cap)
{
  return detail::closure(g.degree(), g.generators(), cap).size();
}

/// The generator of <c> (c a full cycle) sending point 0 to the smallest
/// point; it is also the lexicographically least generator.
inline Perm canonical_cycle_generator(Perm const &c)
{
  std::size_t n = c.degree();
  std::vector<point_t> seq(n);
  seq[0] = 0;
  for (std::size_t t = 1; t < n; ++t)
    seq[t] = c[seq[t - 1]];
  std::size_t best = 1 % n;
  for (std::size_t a = 1; a < n; ++a)
    if (std::gcd(a, n) == 1 && seq[a] < seq[best])
      best = a;
  if (n == 1)
    return c;
  std::vector<point_t> imgs(n);
  for (std::size_t t = 0; t < n; ++t)
    imgs[seq[t]] = seq[(t + best) % n];
  return Perm(std::move(imgs), unchecked);
}

struct OracleClass {
  Perm representative;   // canonical generator of the least subgroup in the class
  std::size_t subgroups; // number of regular cyclic subgroups in the class
};

/// Regular cyclic subgroups of K up to K-conjugacy, by enumeration. Classes
/// are orbits of the conjugation action of K's generators on the set of
/// subgroups, which coincide with conjugacy classes under all of K.
inline std::vector<OracleClass> oracle_cyc(Group const &k, std::size_t cap)
{
  std::size_t n = k.degree();
  auto all = enumerate_group(k, cap);
  std::vector<Perm> subgroups;
  {
    detail::FlatPermSet seen(n);
    for (auto const &g : all)
      if (is_full_cycle(g)) {
        Perm c = canonical_cycle_generator(g);
        if (seen.insert(c.images().data()))
          subgroups.push_back(std::move(c));
      }
  }
  std::sort(subgroups.begin(), subgroups.end());
  std::unordered_map<Perm, std::size_t, PermHash> index;
  for (std::size_t i = 0; i < subgroups.size(); ++i)
    index.emplace(subgroups[i], i);
  std::vector<std::size_t> parent(subgroups.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < subgroups.size(); ++i)
    for (auto const &s : k.generators()) {
      auto j = index.at(canonical_cycle_generator(conjugate(subgroups[i], s)));
      auto a = find(i), b = find(j);
      if (a != b)
        parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<OracleClass> res;
  std::vector<std::size_t> slot(subgroups.size(), static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < subgroups.size(); ++i) {
    auto r = find(i);
    if (slot[r] == static_cast<std::size_t>(-1)) {
      slot[r] = res.size();
      res.push_back({subgroups[r], 0});
    }
    ++res[slot[r]].subgroups;
  }
  return res;
}

/// Index of the oracle class containing <c>, or -1.
inline std::ptrdiff_t oracle_class_of(Group const &k, std::vector<OracleClass> const &classes,
                                      Perm const &c, std::size_t cap)
{
  // conjugacy class of <c> under K by orbit closure on canonical generators
  Perm start = canonical_cycle_generator(c);
  detail::FlatPermSet seen(k.degree());
  seen.insert(start.images().data());
  std::vector<Perm> queue{start};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (auto const &s : k.generators()) {
      Perm y = canonical_cycle_generator(conjugate(queue[q], s));
      if (seen.insert(y.images().data())) {
        if (seen.size() > cap)
          throw CapError("conjugacy orbit exceeded cap");
        queue.push_back(std::move(y));
      }
    }
  }
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (seen.contains(classes[i].representative.images().data()))
      return static_cast<std::ptrdiff_t>(i);
  return -1;
}

/// Every block (as a sorted 0-based point list) containing point 0 with size
/// strictly between 1 and n, found by testing all candidate subsets.
inline std::vector<std::vector<point_t>> brute_force_blocks(Group const &k)
{
  std::size_t n = k.degree();
  if (n > 20)
    throw CapError("brute-force block search limited to degree 20");
  std::vector<std::vector<point_t>> res;
  for (std::uint32_t mask = 1; mask < (1u << n); mask += 2) {
    auto size = static_cast<std::size_t>(__builtin_popcount(mask));
    if (size < 2 || size >= n || n % size)
      continue;
    bool ok = true;
    for (auto const &g : k.generators()) {
      std::uint32_t img = 0;
      for (point_t x = 0; x < n; ++x)
        if (mask >> x & 1u)
          img |= 1u << g[x];
      if (img != mask && (img & mask)) {
        ok = false;
        break;
      }
    }
    if (!ok)
      continue;
    // invariance under generators is not enough: check the whole orbit of
    // the block is a partition
    std::vector<std::uint32_t> orbit{mask};
    for (std::size_t q = 0; q < orbit.size() && ok; ++q)
      for (auto const &g : k.generators()) {
        std::uint32_t img = 0;
        for (point_t x = 0; x < n; ++x)
          if (orbit[q] >> x & 1u)
            img |= 1u << g[x];
        bool known = false;
        for (auto b : orbit) {
          if (b == img)
            known = true;
          else if (b & img)
            ok = false;
        }
        if (!known)
          orbit.push_back(img);
      }
    if (!ok)
      continue;
    std::vector<point_t> block;
    for (point_t x = 0; x < n; ++x)
      if (mask >> x & 1u)
        block.push_back(x);
    res.push_back(std::move(block));
  }
  return res;
}

} // namespace cycbase
