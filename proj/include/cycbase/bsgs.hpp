#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <unordered_set>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "perm.hpp"

namespace cycbase {

using order_t = boost::multiprecision::cpp_int;

/// Seeded generator used everywhere randomness is needed. Bounded draws are
/// done by rejection so results do not depend on the standard library's
/// distribution implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t bound)
  {
    if (bound <= 1)
      return 0;
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                          std::numeric_limits<std::uint64_t>::max() % bound;
    for (;;) {
      std::uint64_t v = engine_();
      if (v < limit)
        return v % bound;
    }
  }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Base and strong generating set built by deterministic incremental
/// Schreier-Sims with explicit transversal tables.
///
/// A chain may be restricted to take base points from a point range only.
/// Residues that fix the whole range are then collected as kernel elements
/// rather than extending the base. Acting on a disjoint union "domain + image
/// points" this yields the image chain of an action homomorphism together with
/// generators of its kernel.
struct BsgsOptions {
  std::vector<point_t> base_prefix;
  point_t domain_lo = 0;
  point_t domain_hi = std::numeric_limits<point_t>::max();
};

class Bsgs {
 public:
  using Options = BsgsOptions;

  explicit Bsgs(std::size_t degree = 0, Options opts = {})
    : n_(degree), opts_(std::move(opts))
  {
    opts_.domain_hi = std::min<point_t>(opts_.domain_hi,
                                        static_cast<point_t>(degree));
    for (point_t b : opts_.base_prefix) {
      if (b >= n_)
        throw ArgumentError("base point out of range");
      push_level(b);
    }
  }

  Bsgs(std::size_t degree, std::span<Perm const> generators, Options opts = {})
    : Bsgs(degree, std::move(opts))
  {
    for (auto const &g : generators)
      add_generator(g);
  }

  /// Chain from a strong generating set already known to be complete for
  /// `base` (used by subgroup search, whose output is strong by
  /// construction). No Schreier generators are checked.
  static Bsgs from_strong_generators(std::size_t degree,
                                     std::vector<point_t> const &base,
                                     std::vector<Perm> const &sgs)
  {
    Bsgs res(degree);
    for (point_t b : base)
      res.push_level(b);
    for (auto const &s : sgs) {
      if (s.is_identity())
        continue;
      auto idx = static_cast<std::uint32_t>(res.sgs_.size());
      res.sgs_.push_back(s);
      for (std::size_t l = 0; l < res.levels_.size(); ++l) {
        res.levels_[l].gens.push_back(idx);
        if (s[res.levels_[l].base_point] != res.levels_[l].base_point)
          break;
      }
    }
    for (std::size_t l = 0; l < res.levels_.size(); ++l)
      res.close_orbit(l);
    for (auto &lv : res.levels_)
      lv.checked.assign(lv.orbit.size(), static_cast<std::uint32_t>(lv.gens.size()));
    return res;
  }

  std::size_t degree() const noexcept { return n_; }

  std::size_t base_length() const noexcept { return levels_.size(); }

  point_t base_point(std::size_t level) const { return levels_[level].base_point; }

  std::vector<point_t> base() const
  {
    std::vector<point_t> res;
    for (auto const &lv : levels_)
      res.push_back(lv.base_point);
    return res;
  }

  std::vector<Perm> const &strong_generators() const noexcept { return sgs_; }

  /// Strong generators fixing the first `level` base points.
  std::vector<Perm> level_generators(std::size_t level) const
  {
    std::vector<Perm> res;
    if (level >= levels_.size())
      return res;
    for (auto gi : levels_[level].gens)
      res.push_back(sgs_[gi]);
    return res;
  }

  std::span<point_t const> orbit(std::size_t level) const
  {
    return levels_[level].orbit;
  }

  /// Orbit position of `p` at `level`, or -1.
  std::int32_t orbit_index(std::size_t level, point_t p) const
  {
    return levels_[level].index[p];
  }

  /// Image table of the transversal element mapping the base point to the
  /// orbit point with index `idx`.
  point_t const *transversal_table(std::size_t level, std::size_t idx) const
  {
    return levels_[level].trans.data() + idx * n_;
  }

  point_t const *transversal_inverse_table(std::size_t level,
                                           std::size_t idx) const
  {
    return levels_[level].trans_inv.data() + idx * n_;
  }

  Perm transversal(std::size_t level, point_t p) const
  {
    auto idx = levels_[level].index[p];
    if (idx < 0)
      throw ArgumentError("point not in basic orbit");
    auto const *t = transversal_table(level, static_cast<std::size_t>(idx));
    return Perm(std::vector<point_t>(t, t + n_), unchecked);
  }

  order_t order() const
  {
    order_t res = 1;
    for (auto const &lv : levels_)
      res *= lv.orbit.size();
    return res;
  }

  /// Kernel elements collected in restricted-domain mode. The kernel is their
  /// normal closure in the group (conjugates of these residues by
  /// transversal elements are Schreier generators too).
  std::vector<Perm> const &kernel_generators() const noexcept { return kernel_; }

  /// Sifts `g` from `start`; returns the residue and the level where sifting
  /// stopped (base_length() when every level was passed).
  std::pair<Perm, std::size_t> strip(Perm const &g, std::size_t start = 0) const
  {
    if (g.degree() != n_)
      throw DegreeError("strip: degree mismatch");
    std::vector<point_t> buf(g.images().begin(), g.images().end());
    auto level = strip_inplace(buf.data(), start);
    return {Perm(std::move(buf), unchecked), level};
  }

  bool contains(Perm const &g) const
  {
    if (g.degree() != n_)
      throw DegreeError("contains: degree mismatch");
    std::vector<point_t> buf(g.images().begin(), g.images().end());
    if (strip_inplace(buf.data(), 0) != levels_.size())
      return false;
    return is_identity(buf.data());
  }

  /// Adds a generator; returns false when it was already a member.
  bool add_generator(Perm const &g)
  {
    if (g.degree() != n_)
      throw DegreeError("add_generator: degree mismatch");
    std::vector<point_t> buf(g.images().begin(), g.images().end());
    auto level = strip_inplace(buf.data(), 0);
    if (level == levels_.size() && is_identity(buf.data()))
      return false;
    auto stop = insert_residue(std::move(buf), 0, level);
    if (!stop)
      return false;
    run(*stop);
    return true;
  }

  /// Uniform random element: one transversal element per level.
  Perm random_element(Rng &rng) const
  {
    std::vector<point_t> res(n_), tmp(n_);
    for (point_t i = 0; i < n_; ++i)
      res[i] = i;
    for (std::size_t l = levels_.size(); l-- > 0;) {
      auto const &lv = levels_[l];
      auto idx = rng.below(lv.orbit.size());
      auto const *t = lv.trans.data() + idx * n_;
      for (point_t x = 0; x < n_; ++x)
        tmp[x] = t[res[x]];
      res.swap(tmp);
    }
    return Perm(std::move(res), unchecked);
  }

  /// Chain of the stabilizer of the first `level` base points.
  Bsgs stabilizer_chain(std::size_t level) const
  {
    Bsgs res(n_);
    std::vector<std::int64_t> remap(sgs_.size(), -1);
    for (std::size_t l = level; l < levels_.size(); ++l) {
      Level lv = levels_[l];
      for (auto &gi : lv.gens) {
        if (remap[gi] < 0) {
          remap[gi] = static_cast<std::int64_t>(res.sgs_.size());
          res.sgs_.push_back(sgs_[gi]);
        }
        gi = static_cast<std::uint32_t>(remap[gi]);
      }
      res.levels_.push_back(std::move(lv));
    }
    return res;
  }

  /// Chain of k^-1 G k.
  Bsgs conjugated(Perm const &k) const
  {
    if (k.degree() != n_)
      throw DegreeError("conjugated: degree mismatch");
    Bsgs res(n_);
    res.opts_ = opts_;
    res.opts_.base_prefix.clear();
    for (auto const &s : sgs_)
      res.sgs_.push_back(conjugate(s, k));
    for (auto const &s : kernel_)
      res.kernel_.push_back(conjugate(s, k));
    for (auto const &lv : levels_) {
      Level nl;
      nl.base_point = k[lv.base_point];
      nl.gens = lv.gens;
      nl.closed = lv.closed;
      nl.checked = lv.checked;
      nl.parent = lv.parent;
      nl.index.assign(n_, -1);
      nl.trans.resize(lv.trans.size());
      nl.trans_inv.resize(lv.trans_inv.size());
      for (std::size_t a = 0; a < lv.orbit.size(); ++a) {
        point_t p = k[lv.orbit[a]];
        nl.orbit.push_back(p);
        nl.index[p] = static_cast<std::int32_t>(a);
        auto const *t = lv.trans.data() + a * n_;
        auto const *ti = lv.trans_inv.data() + a * n_;
        auto *nt = nl.trans.data() + a * n_;
        auto *nti = nl.trans_inv.data() + a * n_;
        for (point_t x = 0; x < n_; ++x) {
          nt[k[x]] = k[t[x]];
          nti[k[x]] = k[ti[x]];
        }
      }
      res.levels_.push_back(std::move(nl));
    }
    return res;
  }

 private:
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  struct Level {
    point_t base_point = 0;
    std::vector<std::uint32_t> gens;
    std::vector<point_t> orbit;
    std::vector<std::int32_t> index;
    std::vector<point_t> trans;
    std::vector<point_t> trans_inv;
    std::vector<std::uint32_t> closed;
    std::vector<std::uint32_t> checked;
    // (orbit index, generator slot) of the Schreier tree edge that reached
    // each orbit point
    std::vector<std::pair<std::uint32_t, std::uint32_t>> parent;
  };

  bool is_identity(point_t const *g) const noexcept
  {
    for (point_t x = 0; x < n_; ++x)
      if (g[x] != x)
        return false;
    return true;
  }

  void push_level(point_t b)
  {
    Level lv;
    lv.base_point = b;
    lv.index.assign(n_, -1);
    lv.orbit.push_back(b);
    lv.index[b] = 0;
    lv.trans.resize(n_);
    for (point_t x = 0; x < n_; ++x)
      lv.trans[x] = x;
    lv.trans_inv = lv.trans;
    lv.closed.push_back(0);
    lv.checked.push_back(0);
    lv.parent.emplace_back(kNone, kNone);
    levels_.push_back(std::move(lv));
  }

  std::size_t strip_inplace(point_t *g, std::size_t start) const noexcept
  {
    for (std::size_t l = start; l < levels_.size(); ++l) {
      auto const &lv = levels_[l];
      point_t b = lv.base_point;
      point_t beta = g[b];
      if (beta == b)
        continue;
      auto idx = lv.index[beta];
      if (idx < 0)
        return l;
      auto const *inv = lv.trans_inv.data() + static_cast<std::size_t>(idx) * n_;
      for (point_t x = 0; x < n_; ++x)
        g[x] = inv[g[x]];
    }
    return levels_.size();
  }

  point_t first_moved_in_domain(point_t const *g) const noexcept
  {
    for (point_t x = opts_.domain_lo; x < opts_.domain_hi; ++x)
      if (g[x] != x)
        return x;
    return static_cast<point_t>(n_);
  }

  /// Adds residue `y` (fixing the first `level` base points) as a strong
  /// generator for levels [from, level]. Returns the deepest level touched,
  /// or nothing when `y` went to the kernel.
  std::optional<std::size_t> insert_residue(std::vector<point_t> y,
                                            std::size_t from, std::size_t level)
  {
    if (level == levels_.size()) {
      point_t b = first_moved_in_domain(y.data());
      if (b == n_) {
        Perm k(std::move(y), unchecked);
        if (!k.is_identity() && kernel_seen_.insert(k).second)
          kernel_.push_back(std::move(k));
        return std::nullopt;
      }
      push_level(b);
    }
    auto idx = static_cast<std::uint32_t>(sgs_.size());
    sgs_.emplace_back(std::move(y), unchecked);
    for (std::size_t l = from; l <= level; ++l) {
      levels_[l].gens.push_back(idx);
      close_orbit(l);
    }
    return level;
  }

  void close_orbit(std::size_t l)
  {
    auto &lv = levels_[l];
    auto ngens = static_cast<std::uint32_t>(lv.gens.size());
    for (std::size_t a = 0; a < lv.orbit.size(); ++a) {
      for (std::uint32_t gi = lv.closed[a]; gi < ngens; ++gi) {
        auto const &s = sgs_[lv.gens[gi]];
        point_t y = s[lv.orbit[a]];
        if (lv.index[y] >= 0)
          continue;
        auto c = lv.orbit.size();
        lv.orbit.push_back(y);
        lv.index[y] = static_cast<std::int32_t>(c);
        lv.trans.resize((c + 1) * n_);
        lv.trans_inv.resize((c + 1) * n_);
        auto const *ta = lv.trans.data() + a * n_;
        auto *tc = lv.trans.data() + c * n_;
        auto *tci = lv.trans_inv.data() + c * n_;
        for (point_t x = 0; x < n_; ++x)
          tc[x] = s[ta[x]];
        for (point_t x = 0; x < n_; ++x)
          tci[tc[x]] = x;
        lv.closed.push_back(0);
        lv.checked.push_back(0);
        lv.parent.emplace_back(static_cast<std::uint32_t>(a), gi);
      }
      lv.closed[a] = ngens;
    }
  }

  /// Runs the Schreier generator checks from level `start` up to level 0.
  void run(std::size_t start)
  {
    std::vector<point_t> h(n_);
    auto i = static_cast<std::ptrdiff_t>(start);
    while (i >= 0) {
      auto l = static_cast<std::size_t>(i);
      auto stop = check_level(l, h);
      if (stop) {
        i = static_cast<std::ptrdiff_t>(*stop);
        continue;
      }
      --i;
    }
  }

  /// Verifies pending Schreier generators at level `l`. On the first
  /// non-sifting one, inserts its residue and returns the level to resume at.
  std::optional<std::size_t> check_level(std::size_t l, std::vector<point_t> &h)
  {
    for (std::size_t a = 0; a < levels_[l].orbit.size(); ++a) {
      for (;;) {
        auto &lv = levels_[l];
        if (lv.checked[a] >= lv.gens.size())
          break;
        std::uint32_t gi = lv.checked[a];
        auto const &s = sgs_[lv.gens[gi]];
        point_t y = s[lv.orbit[a]];
        auto c = static_cast<std::size_t>(lv.index[y]);
        if (lv.parent[c].first == a && lv.parent[c].second == gi) {
          ++lv.checked[a];
          continue;
        }
        auto const *ta = lv.trans.data() + a * n_;
        auto const *tci = lv.trans_inv.data() + c * n_;
        for (point_t x = 0; x < n_; ++x)
          h[x] = tci[s[ta[x]]];
        auto fail = strip_inplace(h.data(), l + 1);
        if (fail == levels_.size() && is_identity(h.data())) {
          ++lv.checked[a];
          continue;
        }
        auto stop = insert_residue(h, l + 1, fail);
        if (!stop) {
          // kernel element: this Schreier generator is accounted for
          ++levels_[l].checked[a];
          continue;
        }
        return stop;
      }
    }
    return std::nullopt;
  }

  std::size_t n_;
  Options opts_;
  std::vector<Level> levels_;
  std::vector<Perm> sgs_;
  std::vector<Perm> kernel_;
  std::unordered_set<Perm, PermHash> kernel_seen_;
};

} // namespace cycbase
