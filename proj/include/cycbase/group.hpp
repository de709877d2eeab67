#pragma once

#include <algorithm>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <unordered_set>
#include <utility>
#include <vector>

#include "bsgs.hpp"
#include "perm.hpp"

namespace cycbase {

/// A permutation group given by generators. The stabilizer chain is built on
/// first use and then frozen; handles are cheap to copy and share the chain.
class Group {
 public:
  Group() : Group(1) {}

  explicit Group(std::size_t degree, std::vector<Perm> generators = {})
    : degree_(degree), state_(std::make_shared<State>())
  {
    if (degree == 0)
      throw ArgumentError("group degree must be positive");
    for (auto &g : generators) {
      if (g.degree() != degree)
        throw DegreeError("generator of degree " + std::to_string(g.degree()) +
                          " in group of degree " + std::to_string(degree));
      if (!g.is_identity())
        gens_.push_back(std::move(g));
    }
  }

  /// Wraps a complete chain; its strong generators become the generators.
  static Group from_bsgs(Bsgs chain)
  {
    Group res(chain.degree(), chain.strong_generators());
    std::call_once(res.state_->once, [&] {
      res.state_->essential = res.gens_;
      res.state_->chain.emplace(std::move(chain));
    });
    return res;
  }

  static Group trivial(std::size_t degree) { return Group(degree); }

  std::size_t degree() const noexcept { return degree_; }

  std::vector<Perm> const &generators() const noexcept { return gens_; }

  Bsgs const &bsgs() const
  {
    std::call_once(state_->once, [this] {
      Bsgs chain(degree_);
      for (auto const &g : gens_)
        if (chain.add_generator(g))
          state_->essential.push_back(g);
      state_->chain.emplace(std::move(chain));
    });
    return *state_->chain;
  }

  /// Generators that were not redundant when the chain was built, in order.
  std::vector<Perm> const &essential_generators() const
  {
    bsgs();
    return state_->essential;
  }

  order_t order() const { return bsgs().order(); }

  bool contains(Perm const &g) const
  {
    if (g.degree() != degree_)
      throw DegreeError("contains: degree mismatch");
    return bsgs().contains(g);
  }

  bool is_trivial() const noexcept { return gens_.empty(); }

 private:
  struct State {
    std::once_flag once;
    std::optional<Bsgs> chain;
    std::vector<Perm> essential;
  };

  std::size_t degree_;
  std::vector<Perm> gens_;
  std::shared_ptr<State> state_;
};

inline Bsgs const &build_bsgs(Group const &g) { return g.bsgs(); }

inline bool contains(Group const &g, Perm const &x) { return g.contains(x); }

inline Perm random_element(Group const &g, Rng &rng)
{
  return g.bsgs().random_element(rng);
}

inline Perm random_element(Group const &g, std::uint64_t seed)
{
  Rng rng(seed);
  return random_element(g, rng);
}

/// Calls `fn(images)` once per element of G (products of one transversal
/// element per level) until it returns false. Returns false if stopped early.
template <class Fn>
bool for_each_element(Group const &g, Fn &&fn)
{
  auto const &chain = g.bsgs();
  std::size_t n = g.degree(), depth = chain.base_length();
  std::vector<std::vector<point_t>> acc(depth + 1, std::vector<point_t>(n));
  std::iota(acc[depth].begin(), acc[depth].end(), point_t{0});
  // acc[l] = acc[l+1] * u_l, so acc[0] runs over U_(k-1) ... U_1 U_0 = G
  auto rec = [&](auto &self, std::size_t level) -> bool {
    if (level == 0)
      return fn(std::span<point_t const>(acc[0]));
    std::size_t l = level - 1;
    auto const &below = acc[level];
    auto &out = acc[l];
    for (std::size_t a = 0; a < chain.orbit(l).size(); ++a) {
      auto const *u = chain.transversal_table(l, a);
      for (point_t x = 0; x < n; ++x)
        out[x] = u[below[x]];
      if (!self(self, l))
        return false;
    }
    return true;
  };
  return rec(rec, depth);
}

/// Subgroup fixing every point of `points` (0-based), via a chain whose base
/// starts with those points.
inline Group pointwise_stabilizer(Group const &g,
                                  std::vector<point_t> const &points)
{
  std::vector<point_t> prefix;
  for (point_t p : points) {
    if (p >= g.degree())
      throw ArgumentError("stabilized point out of range");
    if (std::find(prefix.begin(), prefix.end(), p) == prefix.end())
      prefix.push_back(p);
  }
  Bsgs chain(g.degree(), g.generators(), Bsgs::Options{prefix});
  return Group::from_bsgs(chain.stabilizer_chain(prefix.size()));
}

/// Smallest subgroup containing `h` and normalized by `g`.
inline Group normal_closure(Group const &g, Group const &h)
{
  if (g.degree() != h.degree())
    throw DegreeError("normal_closure: degree mismatch");
  Bsgs chain(g.degree());
  std::vector<Perm> gens;
  for (auto const &x : h.generators())
    if (chain.add_generator(x))
      gens.push_back(x);
  auto const &conj = g.essential_generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (auto const &k : conj) {
      Perm y = conjugate(gens[i], k);
      if (chain.add_generator(y))
        gens.push_back(std::move(y));
    }
  }
  return Group::from_bsgs(std::move(chain));
}

inline Perm commutator(Perm const &a, Perm const &b)
{
  return (~a) * (~b) * a * b;
}

/// [G, G] as the normal closure of the commutators of a generating set.
inline Group derived_subgroup(Group const &g)
{
  auto const &gens = g.essential_generators();
  std::vector<Perm> comms;
  std::unordered_set<Perm, PermHash> seen;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Perm c = commutator(gens[i], gens[j]);
      if (!c.is_identity() && seen.insert(c).second)
        comms.push_back(std::move(c));
    }
  return normal_closure(g, Group(g.degree(), std::move(comms)));
}

/// G = G^(0) > G^(1) > ... down to the first term equal to its successor
/// (the stable term appears once, last).
inline std::vector<Group> derived_series(Group const &g)
{
  std::vector<Group> series{g};
  for (;;) {
    auto const &last = series.back();
    if (last.is_trivial())
      break;
    Group next = derived_subgroup(last);
    if (next.order() == last.order())
      break;
    series.push_back(std::move(next));
  }
  return series;
}

inline bool is_solvable(Group const &g)
{
  return derived_series(g).back().order() == 1;
}

/// Last term of the derived series.
inline Group solvable_residual(Group const &g)
{
  return derived_series(g).back();
}

namespace detail {

/// Orbit of `start` under `gens`, as a membership mask.
inline std::vector<bool> orbit_mask(std::size_t n, std::vector<Perm> const &gens,
                                    point_t start)
{
  std::vector<bool> in(n, false);
  std::vector<point_t> queue{start};
  in[start] = true;
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (auto const &s : gens) {
      point_t y = s[queue[q]];
      if (!in[y]) {
        in[y] = true;
        queue.push_back(y);
      }
    }
  return in;
}

/// Depth-first search for an element of G (given by its chain) lying in W
/// (given by a chain whose base starts with G's base). The partial element
/// `h` fixes the images of base points above `level`; `r` accumulates the
/// inverse W transversals used to sift those images.
class IntersectionSearch {
 public:
  IntersectionSearch(Bsgs const &g, Bsgs const &w)
    : g_(g), w_(w), n_(g.degree()), depth_(g.base_length())
  {
    h_.assign(depth_ + 1, std::vector<point_t>(n_));
    r_.assign(depth_ + 1, std::vector<point_t>(n_));
  }

  /// Searches the coset of G^(level+1) mapping base point `level` to `beta`.
  std::optional<Perm> coset(std::size_t level, point_t beta)
  {
    auto gi = g_.orbit_index(level, beta);
    auto wi = w_.orbit_index(level, beta);
    if (gi < 0 || wi < 0)
      return std::nullopt;
    auto const *u = g_.transversal_table(level, static_cast<std::size_t>(gi));
    auto const *vinv = w_.transversal_inverse_table(level, static_cast<std::size_t>(wi));
    std::copy(u, u + n_, h_[level + 1].begin());
    std::copy(vinv, vinv + n_, r_[level + 1].begin());
    if (descend(level + 1))
      return Perm(h_[depth_], unchecked);
    return std::nullopt;
  }

 private:
  bool descend(std::size_t level)
  {
    auto const &h = h_[level];
    auto const &r = r_[level];
    if (level == depth_)
      return w_.contains(Perm(h, unchecked));
    auto orbit = g_.orbit(level);
    auto &hn = h_[level + 1];
    auto &rn = r_[level + 1];
    for (std::size_t a = 0; a < orbit.size(); ++a) {
      point_t image = h[orbit[a]];
      point_t sifted = r[image];
      auto wi = w_.orbit_index(level, sifted);
      if (wi < 0)
        continue;
      auto const *u = g_.transversal_table(level, a);
      auto const *vinv = w_.transversal_inverse_table(level, static_cast<std::size_t>(wi));
      for (point_t x = 0; x < n_; ++x)
        hn[x] = h[u[x]];
      for (point_t x = 0; x < n_; ++x)
        rn[x] = vinv[r[x]];
      if (descend(level + 1))
        return true;
    }
    return false;
  }

  Bsgs const &g_;
  Bsgs const &w_;
  std::size_t n_;
  std::size_t depth_;
  std::vector<std::vector<point_t>> h_;
  std::vector<std::vector<point_t>> r_;
};

} // namespace detail

/// G ∩ W by subgroup search over G's chain, pruning partial base images that
/// no element of W can realize. The generators found level by level form a
/// strong generating set for the intersection relative to G's base.
inline Group intersection(Group const &g, Group const &w)
{
  if (g.degree() != w.degree())
    throw DegreeError("intersection: degree mismatch");
  std::size_t n = g.degree();
  Bsgs const &gc = g.bsgs();
  auto base = gc.base();
  if (base.empty() || w.is_trivial())
    return Group::trivial(n);
  Bsgs wc(n, w.generators(), Bsgs::Options{base});
  detail::IntersectionSearch search(gc, wc);

  std::vector<Perm> found;
  for (std::size_t level = base.size(); level-- > 0;) {
    // generators found so far all fix base points before `level`
    std::vector<Perm> below = found;
    auto reached = detail::orbit_mask(n, found, base[level]);
    std::vector<bool> failed(n, false);
    for (point_t beta : gc.orbit(level)) {
      if (reached[beta] || failed[beta])
        continue;
      if (auto x = search.coset(level, beta)) {
        found.push_back(*x);
        reached = detail::orbit_mask(n, found, base[level]);
      } else {
        // every point in beta's orbit under the stabilizer found so far fails too
        auto same = detail::orbit_mask(n, below, beta);
        for (point_t p = 0; p < n; ++p)
          if (same[p])
            failed[p] = true;
      }
    }
  }
  return Group::from_bsgs(Bsgs::from_strong_generators(n, base, found));
}

namespace detail {

/// Backtrack over K's chain for k with c^k = e, propagating the forced images
/// along cycles of c.
class ConjugatorSearch {
 public:
  ConjugatorSearch(Bsgs const &k, Perm const &c, Perm const &e)
    : k_(k), c_(c), e_(e), n_(k.degree()), depth_(k.base_length()),
      cycle_len_c_(n_), cycle_len_e_(n_)
  {
    fill_cycle_lengths(c_, cycle_len_c_);
    fill_cycle_lengths(e_, cycle_len_e_);
    h_.assign(depth_ + 1, std::vector<point_t>(n_));
    for (point_t x = 0; x < n_; ++x)
      h_[0][x] = x;
  }

  std::optional<Perm> run()
  {
    std::vector<std::int64_t> map(n_, -1);
    std::vector<bool> used(n_, false);
    if (descend(0, map, used))
      return Perm(h_[depth_], unchecked);
    return std::nullopt;
  }

 private:
  static void fill_cycle_lengths(Perm const &g, std::vector<std::size_t> &len)
  {
    for (auto const &cyc : cycles(g))
      for (point_t x : cyc)
        len[x] = cyc.size();
    for (point_t x = 0; x < g.degree(); ++x)
      if (g[x] == x)
        len[x] = 1;
  }

  /// Extends `map` with x -> y and the images forced along the c-cycle of x.
  bool force(point_t x, point_t y, std::vector<std::int64_t> &map,
             std::vector<bool> &used, std::vector<point_t> &trail) const
  {
    if (cycle_len_c_[x] != cycle_len_e_[y])
      return false;
    for (std::size_t t = 0; t < cycle_len_c_[x]; ++t) {
      if (map[x] >= 0) {
        if (static_cast<point_t>(map[x]) != y)
          return false;
      } else {
        if (used[y])
          return false;
        map[x] = y;
        used[y] = true;
        trail.push_back(x);
      }
      x = c_[x];
      y = e_[y];
    }
    return true;
  }

  bool descend(std::size_t level, std::vector<std::int64_t> &map,
               std::vector<bool> &used)
  {
    auto const &h = h_[level];
    if (level == depth_) {
      for (point_t x = 0; x < n_; ++x)
        if (h[c_[x]] != e_[h[x]])
          return false;
      return true;
    }
    auto orbit = k_.orbit(level);
    point_t b = k_.base_point(level);
    auto &hn = h_[level + 1];
    for (std::size_t a = 0; a < orbit.size(); ++a) {
      point_t image = h[orbit[a]];
      std::vector<point_t> trail;
      bool ok = force(b, image, map, used, trail);
      if (ok) {
        auto const *u = k_.transversal_table(level, a);
        for (point_t x = 0; x < n_; ++x)
          hn[x] = h[u[x]];
        if (descend(level + 1, map, used))
          return true;
      }
      for (point_t x : trail) {
        used[static_cast<point_t>(map[x])] = false;
        map[x] = -1;
      }
    }
    return false;
  }

  Bsgs const &k_;
  Perm const &c_;
  Perm const &e_;
  std::size_t n_;
  std::size_t depth_;
  std::vector<std::size_t> cycle_len_c_;
  std::vector<std::size_t> cycle_len_e_;
  std::vector<std::vector<point_t>> h_;
};

/// Conjugators in Sym(n) from full cycle c to full cycle e: the n maps
/// x_t -> y_(t+s) along the two cycles.
inline std::optional<Perm> full_cycle_conjugator(Group const &k, Perm const &c,
                                                 Perm const &e)
{
  std::size_t n = c.degree();
  std::vector<point_t> xs(n), ys(n);
  xs[0] = 0;
  ys[0] = 0;
  for (std::size_t t = 1; t < n; ++t) {
    xs[t] = c[xs[t - 1]];
    ys[t] = e[ys[t - 1]];
  }
  std::vector<point_t> img(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t)
      img[xs[t]] = ys[(t + s) % n];
    Perm cand(img, unchecked);
    if (k.contains(cand))
      return cand;
  }
  return std::nullopt;
}

} // namespace detail

/// k in K with <c>^k = <d>, if any. Tries each generator d^a of <d> in turn.
inline std::optional<Perm> conjugating_element(Group const &k, Perm const &c,
                                               Perm const &d)
{
  if (c.degree() != k.degree() || d.degree() != k.degree())
    throw DegreeError("conjugating_element: degree mismatch");
  if (!k.contains(c) || !k.contains(d))
    throw ArgumentError("conjugating_element: cyclic subgroup not inside K");
  auto order = element_order(c);
  if (order != element_order(d))
    return std::nullopt;
  bool full = is_full_cycle(c);
  for (std::uint64_t a = 1; a <= order; ++a) {
    if (std::gcd(a, order) != 1)
      continue;
    Perm e = d.pow(static_cast<long long>(a));
    if (cycle_type(e) != cycle_type(c))
      return std::nullopt;
    std::optional<Perm> x = full ? detail::full_cycle_conjugator(k, c, e)
                                 : detail::ConjugatorSearch(k.bsgs(), c, e).run();
    if (x)
      return x;
  }
  return std::nullopt;
}

} // namespace cycbase
