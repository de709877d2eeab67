#pragma once

#include <atomic>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "control.hpp"
#include "corpus.hpp"
#include "cycle_base.hpp"
#include "oracle.hpp"

namespace cycbase {

struct SelftestRow {
  std::string name;
  bool ok = true;
  std::string message;
  std::size_t oracle_classes = 0;
  std::size_t base_size = 0;
};

/// Oracle comparison of one group: base count and representatives against
/// oracle_cyc, M solvable and inside K, control of every oracle class (when
/// `control_degree_cap` allows).
inline SelftestRow check_against_oracle(std::string name, Group const &k, std::uint64_t seed,
                                        std::size_t cap, bool run_oracle = true,
                                        std::size_t control_degree_cap = 12)
{
  SelftestRow row;
  row.name = std::move(name);
  auto fail = [&](std::string msg) {
    row.ok = false;
    if (!row.message.empty())
      row.message += "; ";
    row.message += msg;
  };
  try {
    CycleBaseOptions opts;
    opts.seed = seed;
    opts.enumeration_cap = cap;
    auto r = cycle_base(k, opts);
    row.base_size = r.base.size();
    Group const &m = r.control.m;
    if (!is_solvable(m))
      fail("M is not solvable");
    for (auto const &g : m.generators())
      if (!k.contains(g)) {
        fail("M is not inside K");
        break;
      }
    for (auto const &c : r.base)
      if (!is_full_cycle(c) || !m.contains(c))
        fail("base element " + format_cycle_string(c) + " is not a full cycle of M");
    if (!run_oracle || k.order() > cap) {
      if (row.ok)
        row.message = "oracle skipped";
      return row;
    }
    auto classes = oracle_cyc(k, cap);
    row.oracle_classes = classes.size();
    if (classes.size() != r.base.size())
      fail("class count " + std::to_string(r.base.size()) + " vs oracle " +
           std::to_string(classes.size()));
    std::vector<bool> hit(classes.size(), false);
    for (auto const &c : r.base) {
      auto i = oracle_class_of(k, classes, c, cap);
      if (i < 0 || hit[static_cast<std::size_t>(i)])
        fail("representative " + format_cycle_string(c) + " does not match a fresh oracle class");
      else
        hit[static_cast<std::size_t>(i)] = true;
    }
    if (k.degree() <= control_degree_cap) {
      std::vector<Perm> reps;
      for (auto const &cl : classes)
        reps.push_back(cl.representative);
      auto rep = verify_control(k, m, reps);
      if (!rep.ok())
        fail(std::to_string(rep.failures.size()) + " oracle classes not conjugate into M");
    }
  } catch (std::exception const &e) {
    fail(std::string("exception: ") + e.what());
  }
  return row;
}

/// Runs check_against_oracle over a corpus; rows come back in corpus order
/// whatever the thread count.
inline std::vector<SelftestRow> run_selftest(Corpus const &corpus, std::uint64_t seed,
                                             std::size_t cap = 1000000, unsigned threads = 1)
{
  std::vector<SelftestRow> rows(corpus.entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < rows.size();) {
      auto const &e = corpus.entries[i];
      rows[i] = check_against_oracle(e.name, e.group, seed, cap, e.enumerable);
    }
  };
  threads = std::max(1u, threads);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t)
    pool.emplace_back(worker);
  worker();
  for (auto &t : pool)
    t.join();
  return rows;
}

} // namespace cycbase
