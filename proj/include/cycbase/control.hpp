#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blocks.hpp"
#include "feasible.hpp"
#include "group.hpp"
#include "primitive.hpp"

namespace cycbase {

enum class Conclusion { ControlsCyc, ProvablyEmptyCyc, TriviallyK };

inline char const *to_string(Conclusion c)
{
  switch (c) {
    case Conclusion::ControlsCyc:
      return "ControlsCyc";
    case Conclusion::ProvablyEmptyCyc:
      return "ProvablyEmptyCyc";
    case Conclusion::TriviallyK:
      break;
  }
  return "TriviallyK";
}

/// One level of the recursion. `step` is the step number that produced the
/// output of this level, `branch` says why.
struct TraceRecord {
  std::size_t depth = 0;
  std::size_t degree = 0;
  std::size_t block_size = 0;
  std::size_t blocks = 0;
  int step = 0;
  std::string branch;
  std::string order_in;     // |K| on entry
  std::string order_after;  // |K| after the Step 2 replacement
  std::string order_out;    // |M|
  std::string detail;       // e.g. the class of K^Δ
};

struct ControlResult {
  Group m;
  Conclusion conclusion = Conclusion::ControlsCyc;
  std::uint64_t seed = 0;
  std::vector<TraceRecord> trace;
  /// H found at Step 4 of the outermost level, on the reference block.
  std::optional<Perm> witness;
};

struct ControlOptions {
  std::uint64_t seed = 1;
  SearchOptions search{};
  bool check_minimal_block = true;
};

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt)
{
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Block of the system containing 0 cannot be shrunk: every β in it
/// generates the whole block together with 0.
inline bool block_is_minimal(Group const &k, BlockSystem const &d)
{
  auto const &blk = d.block(d.block_of(0));
  for (point_t beta : blk) {
    if (beta == 0)
      continue;
    auto parts = minimal_block_with(k, 0, beta);
    for (auto const &p : parts)
      if (std::find(p.begin(), p.end(), point_t{0}) != p.end() && p.size() != blk.size())
        return false;
  }
  return true;
}

class ControlRun {
 public:
  explicit ControlRun(ControlOptions opts) : opts_(std::move(opts)) {}

  std::vector<TraceRecord> trace;

  ControlResult run(Group const &k0, std::size_t depth)
  {
    std::size_t n = k0.degree();
    TraceRecord rec;
    rec.depth = depth;
    rec.degree = n;
    rec.order_in = k0.order().str();
    auto finish = [&](Group m, Conclusion c, int step, std::string branch) {
      rec.step = step;
      rec.branch = std::move(branch);
      rec.order_out = m.order().str();
      if (rec.order_after.empty())
        rec.order_after = rec.order_in;
      trace.push_back(rec);
      ControlResult res;
      res.m = std::move(m);
      res.conclusion = c;
      return res;
    };

    // Step 1
    if (n == 1)
      return finish(k0, Conclusion::TriviallyK, 1, "degree one");
    if (!is_transitive(k0))
      return finish(Group::trivial(n), Conclusion::ProvablyEmptyCyc, 1, "intransitive");
    BlockSystem d = minimal_block_system(k0);
    rec.block_size = d.block_size();
    rec.blocks = d.count();

    Group k = k0;
    std::optional<BlockQuotient> bq;
    Group kq = Group::trivial(1);
    if (!d.is_single()) {
      bq.emplace(k0, d);
      if (orbits(bq->kernel()) != d.blocks())
        return finish(Group::trivial(n), Conclusion::ProvablyEmptyCyc, 1, "minimal system not normal");

      // Step 2
      ControlResult sub = run(bq->image(), depth + 1);
      if (sub.conclusion == Conclusion::ProvablyEmptyCyc) {
        // the preimage is then the kernel, which is intransitive
        rec.order_after = bq->kernel().order().str();
        return finish(Group::trivial(n), Conclusion::ProvablyEmptyCyc, 3,
                      "block action has no regular cyclic subgroup");
      }
      if (sub.m.order() != bq->image().order()) {
        k = bq->preimage(sub.m);
        bq.emplace(k, d);
      }
      kq = bq->image();
    }
    rec.order_after = k.order().str();

    // Step 3
    if (is_solvable(k))
      return finish(k, depth == 0 && k.order() == k0.order() ? Conclusion::TriviallyK
                                                             : Conclusion::ControlsCyc,
                    3, "solvable");
    if (!is_transitive(k))
      return finish(Group::trivial(n), Conclusion::ProvablyEmptyCyc, 3, "intransitive after preimage");

    // Step 4
    Group kd = d.is_single() ? k : restrict_to(bq->block_stabilizer(0), d.block(0));
    if (!minimal_block_system(kd).is_single()) {
      // only possible when K^Δ of the input has no regular cyclic subgroup
      Group orig = d.is_single() ? k0 : restriction_to_block(k0, d, 0);
      auto cls0 = classify_primitive(orig);
      SearchOptions so = opts_.search;
      so.seed = mix_seed(opts_.seed, depth);
      if (find_regular_cyclic(orig, cls0, so))
        throw FeasibilityViolation("block restriction became imprimitive after the preimage step");
      return finish(Group::trivial(n), Conclusion::ProvablyEmptyCyc, 4, "no regular cyclic subgroup on a block");
    }
    auto cls = classify_primitive(kd);
    rec.detail = cls.describe();
    SearchOptions so = opts_.search;
    so.seed = mix_seed(opts_.seed, depth);
    auto h = find_regular_cyclic(kd, cls, so);
    if (!h)
      return finish(Group::trivial(n), Conclusion::ProvablyEmptyCyc, 4, "no regular cyclic subgroup on a block");

    // Step 5
    NormalizerTower tower = build_normalizer_tower(*h);
    if (d.is_single()) {
      // Δ = Ω, the frame is the identity and W* = N*(H)
      Group w = tower.nstar_h;
      Group m = intersection(k, w);
      auto res = finish(m, Conclusion::ControlsCyc, 6, "primitive");
      res.witness = *h;
      return res;
    }
    FeasibleContext ctx = build_feasible_context(k, d, bq->kernel(), cls);
    if (!ctx.e_equals_eprime())
      return finish(Group::trivial(n), Conclusion::ProvablyEmptyCyc, 5, "E differs from E'");
    if (opts_.check_minimal_block && !block_is_minimal(k, d))
      throw FeasibilityViolation("block system is no longer minimal at Step 5");
    WreathFrame frame = build_frame(ctx);
    Perm const &relabel = frame.relabel;
    Group wstar = build_Wstar(tower, kq);
    Group kstar = Group::from_bsgs(k.bsgs().conjugated(relabel));

    // Step 6
    Group mstar = intersection(kstar, wstar);
    Group m = Group::from_bsgs(mstar.bsgs().conjugated(~relabel));
    auto res = finish(m, Conclusion::ControlsCyc, 6, "feasible");
    res.witness = *h;
    return res;
  }

 private:
  ControlOptions opts_;
};

} // namespace detail

/// A solvable M <= K such that every regular cyclic subgroup of K has a
/// K-conjugate inside M.
inline ControlResult control_subgroup(Group const &k, ControlOptions const &opts = {})
{
  detail::ControlRun run(opts);
  ControlResult res = run.run(k, 0);
  res.seed = opts.seed;
  res.trace = std::move(run.trace);
  return res;
}

inline ControlResult control_subgroup(Group const &k, std::uint64_t seed)
{
  ControlOptions opts;
  opts.seed = seed;
  return control_subgroup(k, opts);
}

struct ControlReport {
  std::size_t checked = 0;
  std::size_t conjugated = 0;
  std::vector<Perm> failures;

  bool ok() const { return failures.empty(); }
};

/// For every given full cycle c, searches k in K with <c>^k <= M.
inline ControlReport verify_control(Group const &k, Group const &m, std::vector<Perm> const &cycles)
{
  ControlReport rep;
  std::vector<Perm> mcycles;
  // the full cycles of M, as targets for the conjugacy test
  bool small = m.order() <= 1000000;
  if (small)
    for_each_element(m, [&](std::span<point_t const> x) {
      Perm g(std::vector<point_t>(x.begin(), x.end()), unchecked);
      if (is_full_cycle(g))
        mcycles.push_back(std::move(g));
      return true;
    });
  for (auto const &c : cycles) {
    ++rep.checked;
    bool hit = false;
    if (m.contains(c)) {
      hit = true;
    } else if (small) {
      for (auto const &e : mcycles)
        if (detail::full_cycle_conjugator(k, c, e)) {
          hit = true;
          break;
        }
    } else {
      throw CapError("verify_control: controlling subgroup too large to scan");
    }
    if (hit)
      ++rep.conjugated;
    else
      rep.failures.push_back(c);
  }
  return rep;
}

} // namespace cycbase
