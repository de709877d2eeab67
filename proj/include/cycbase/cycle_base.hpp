#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "control.hpp"
#include "oracle.hpp"

namespace cycbase {

struct CycleBaseOptions {
  std::uint64_t seed = 1;
  std::size_t enumeration_cap = 1000000;
  std::size_t draws = 0; // 0: 200 n φ(n)
  SearchOptions search{};
};

struct CycleBaseResult {
  std::vector<Perm> base;   // canonical generators, one per class
  std::string method;       // "enumeration", "sampling" or "empty"
  bool verified = false;
  std::size_t phi_bound = 0;
  std::size_t candidates = 0; // distinct regular cyclic subgroups of M seen
  ControlResult control;
};

namespace detail {

/// Keeps the first of every K-conjugacy class among the sorted candidates.
/// Candidates are first grouped by M-conjugacy (orbits of M's generators on
/// the candidate set, which is M-invariant when complete).
inline std::vector<Perm> fuse_under_conjugacy(Group const &k, Group const &m,
                                              std::vector<Perm> cands)
{
  std::sort(cands.begin(), cands.end());
  std::unordered_map<Perm, std::size_t, PermHash> index;
  for (std::size_t i = 0; i < cands.size(); ++i)
    index.emplace(cands[i], i);
  std::vector<bool> covered(cands.size(), false);
  std::vector<Perm> reps;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (covered[i])
      continue;
    covered[i] = true;
    std::vector<std::size_t> queue{i};
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (auto const &s : m.generators()) {
        auto it = index.find(canonical_cycle_generator(conjugate(cands[queue[q]], s)));
        if (it != index.end() && !covered[it->second]) {
          covered[it->second] = true;
          queue.push_back(it->second);
        }
      }
    bool fresh = true;
    for (auto const &r : reps)
      if (conjugating_element(k, cands[i], r)) {
        fresh = false;
        break;
      }
    if (fresh)
      reps.push_back(cands[i]);
  }
  return reps;
}

} // namespace detail

/// One full cycle per K-conjugacy class of regular cyclic subgroups, read off
/// the controlling subgroup M.
inline CycleBaseResult cycle_base(Group const &k, CycleBaseOptions const &opts = {})
{
  std::size_t n = k.degree();
  CycleBaseResult res;
  res.phi_bound = euler_phi(n);
  ControlOptions copts;
  copts.seed = opts.seed;
  copts.search = opts.search;
  res.control = control_subgroup(k, copts);
  Group const &m = res.control.m;

  if (res.control.conclusion == Conclusion::ProvablyEmptyCyc) {
    res.method = "empty";
    res.verified = true;
    return res;
  }

  detail::FlatPermSet seen(n);
  std::vector<Perm> cands;
  auto offer = [&](Perm const &g) {
    if (!is_full_cycle(g))
      return;
    Perm c = canonical_cycle_generator(g);
    if (seen.insert(c.images().data()))
      cands.push_back(std::move(c));
  };
  if (m.order() <= opts.enumeration_cap) {
    res.method = "enumeration";
    res.verified = true;
    for_each_element(m, [&](std::span<point_t const> x) {
      offer(Perm(std::vector<point_t>(x.begin(), x.end()), unchecked));
      return true;
    });
  } else {
    res.method = "sampling";
    std::size_t draws = opts.draws ? opts.draws : 200 * n * res.phi_bound;
    for (auto const &g : m.generators())
      offer(g);
    if (res.control.witness && res.control.witness->degree() == n)
      offer(*res.control.witness);
    Rng rng(detail::mix_seed(opts.seed, 0x5a4d));
    for (std::size_t i = 0; i < draws; ++i)
      offer(random_element(m, rng));
  }
  res.candidates = cands.size();
  res.base = detail::fuse_under_conjugacy(k, m, std::move(cands));
  if (res.base.size() > res.phi_bound)
    throw std::logic_error("cycle base of size " + std::to_string(res.base.size()) +
                           " exceeds phi(n) = " + std::to_string(res.phi_bound));
  return res;
}

/// Circulant representations of an object with automorphism group K are in
/// one-to-one correspondence with the classes of regular cyclic subgroups,
/// so the payload is the cycle base.
inline CycleBaseResult circulant_representations(Group const &k, CycleBaseOptions const &opts = {})
{
  return cycle_base(k, opts);
}

} // namespace cycbase
