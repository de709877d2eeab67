// cycbase: cycle bases and controlling subgroups of permutation groups.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cycbase/cycbase.hpp"

using namespace cycbase;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUnverified = 2;
constexpr int kExitInput = 3;

struct Flags {
  std::string path;
  std::uint64_t seed = 1;
  bool json_out = false;
  bool verify = false;
  std::size_t enum_cap = 1000000;
  unsigned threads = 1;
  std::string profile = "tiny";
  std::string out;
};

json verify_with_oracle(Group const &k, CycleBaseResult const &r, std::size_t cap, bool &ok)
{
  json checks;
  ok = true;
  if (k.order() > cap) {
    checks["oracle"] = "skipped: order above --enum-cap";
    return checks;
  }
  auto classes = oracle_cyc(k, cap);
  checks["oracle_classes"] = classes.size();
  bool count_ok = classes.size() == r.base.size();
  std::vector<bool> hit(classes.size(), false);
  bool reps_ok = true;
  for (auto const &c : r.base) {
    auto i = oracle_class_of(k, classes, c, cap);
    if (i < 0 || hit[static_cast<std::size_t>(i)])
      reps_ok = false;
    else
      hit[static_cast<std::size_t>(i)] = true;
  }
  std::vector<Perm> reps;
  for (auto const &cl : classes)
    reps.push_back(cl.representative);
  auto ctl = verify_control(k, r.control.m, reps);
  checks["class_count"] = count_ok ? "pass" : "fail";
  checks["representatives"] = reps_ok ? "pass" : "fail";
  checks["control"] = ctl.ok() ? "pass" : "fail";
  ok = count_ok && reps_ok && ctl.ok();
  return checks;
}

int cmd_cycle_base(Flags const &f, bool circulant)
{
  auto in = read_group_file(f.path);
  CycleBaseOptions opts;
  opts.seed = f.seed;
  opts.enumeration_cap = f.enum_cap;
  auto r = circulant ? circulant_representations(in.group, opts) : cycle_base(in.group, opts);
  json checks = json::object();
  bool ok = true;
  if (f.verify)
    checks = verify_with_oracle(in.group, r, f.enum_cap, ok);
  if (f.json_out) {
    json cert = make_certificate(in, r, checks);
    if (circulant) {
      json reps = json::array();
      for (auto const &c : r.base) {
        // labeling i -> 1^(c^i) identifies Ω with Z_n
        json lab = json::array();
        point_t x = 0;
        for (std::size_t i = 0; i < c.degree(); ++i, x = c[x])
          lab.push_back(x + 1);
        json rep;
        rep["cycle"] = format_cycle_string(c);
        rep["labeling"] = std::move(lab);
        reps.push_back(std::move(rep));
      }
      cert["representations"] = std::move(reps);
    }
    std::cout << cert.dump(2) << "\n";
  } else {
    std::cout << (circulant ? "circulant representations: " : "cycle base: ") << r.base.size()
              << " (phi(n) = " << r.phi_bound << ", method " << r.method
              << (r.verified ? ", complete" : ", sampled: completeness not certified") << ")\n";
    for (auto const &c : r.base)
      std::cout << format_cycle_string(c) << "\n";
    for (auto const &[k, v] : checks.items())
      std::cout << "check " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
  if (!ok) {
    std::cerr << "verification against the oracle failed\n";
    return kExitInternal;
  }
  return r.verified ? kExitOk : kExitUnverified;
}

int cmd_control(Flags const &f)
{
  auto in = read_group_file(f.path);
  auto r = control_subgroup(in.group, f.seed);
  if (f.json_out) {
    json j;
    j["schema"] = kSchemaVersion;
    j["input_hash"] = hex64(input_hash(in.group));
    j["control"] = control_to_json(r);
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << "conclusion: " << to_string(r.conclusion) << "\n";
  std::cout << "order: " << r.m.order() << "\n";
  std::cout << "derived series orders:";
  for (auto const &t : derived_series(r.m))
    std::cout << " " << t.order();
  std::cout << "\ngenerators:\n";
  for (auto const &g : r.m.generators())
    std::cout << "  " << format_cycle_string(g) << "\n";
  std::cout << "trace:\n";
  for (auto const &t : r.trace)
    std::cout << "  depth " << t.depth << " degree " << t.degree << " blocks " << t.blocks
              << "x" << t.block_size << " step " << t.step << " (" << t.branch << ")"
              << (t.detail.empty() ? "" : " " + t.detail) << " |K|=" << t.order_in
              << " after step 2 " << t.order_after << " |M|=" << t.order_out << "\n";
  return kExitOk;
}

int cmd_oracle(Flags const &f)
{
  auto in = read_group_file(f.path);
  auto classes = oracle_cyc(in.group, f.enum_cap);
  if (f.json_out) {
    json j;
    j["schema"] = kSchemaVersion;
    j["oracle_version"] = kOracleVersion;
    j["classes"] = oracle_to_json(classes);
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << classes.size() << " classes\n";
  for (auto const &c : classes)
    std::cout << format_cycle_string(c.representative) << "  (" << c.subgroups << " subgroups)\n";
  return kExitOk;
}

int cmd_selftest(Flags const &f)
{
  auto corpus = generate_corpus(f.profile);
  auto rows = run_selftest(corpus, f.seed, f.enum_cap, f.threads);
  std::size_t bad = 0;
  for (auto const &r : rows) {
    std::cout << (r.ok ? "ok   " : "FAIL ") << r.name << " base " << r.base_size;
    if (!r.message.empty())
      std::cout << "  " << r.message;
    std::cout << "\n";
    bad += !r.ok;
  }
  std::cout << rows.size() - bad << "/" << rows.size() << " passed\n";
  return bad ? kExitInternal : kExitOk;
}

int cmd_golden(Flags const &f)
{
  auto j = oracle_golden(generate_corpus(f.profile), f.enum_cap);
  if (f.out.empty()) {
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }
  std::ofstream o(f.out);
  if (!o)
    throw ArgumentError("cannot write " + f.out);
  o << j.dump(2) << "\n";
  return kExitOk;
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Cycle bases of permutation groups"};
  app.require_subcommand(1);
  Flags f;
  auto add_common = [&](CLI::App *sub, bool file) {
    if (file)
      sub->add_option("file", f.path, "group file (JSON)")->required();
    sub->add_option("--seed", f.seed, "random seed");
    sub->add_flag("--json", f.json_out, "JSON output");
    sub->add_option("--enum-cap", f.enum_cap, "largest group order to enumerate");
    sub->add_option("--threads", f.threads, "worker threads (results do not depend on it)");
  };
  auto *cb = app.add_subcommand("cycle-base", "one full cycle per class of regular cyclic subgroups");
  add_common(cb, true);
  cb->add_flag("--verify", f.verify, "compare with the brute-force oracle");
  auto *circ = app.add_subcommand("circulant", "pairwise nonequivalent circulant representations");
  add_common(circ, true);
  circ->add_flag("--verify", f.verify, "compare with the brute-force oracle");
  auto *ctl = app.add_subcommand("control", "solvable subgroup controlling the regular cyclic subgroups");
  add_common(ctl, true);
  auto *orc = app.add_subcommand("oracle", "regular cyclic subgroups by enumeration");
  add_common(orc, true);
  auto *st = app.add_subcommand("selftest", "invariant suite on a corpus profile");
  add_common(st, false);
  st->add_option("profile", f.profile, "tiny or paper-cases");
  auto *gold = app.add_subcommand("golden", "regenerate the oracle golden file for a corpus profile");
  add_common(gold, false);
  gold->add_option("profile", f.profile, "tiny or paper-cases");
  gold->add_option("--out", f.out, "output path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const &e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*cb)
      return cmd_cycle_base(f, false);
    if (*circ)
      return cmd_cycle_base(f, true);
    if (*ctl)
      return cmd_control(f);
    if (*orc)
      return cmd_oracle(f);
    if (*st)
      return cmd_selftest(f);
    if (*gold)
      return cmd_golden(f);
  } catch (ParseError const &e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (DegreeError const &e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (ArgumentError const &e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (CapError const &e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitInput;
  } catch (std::exception const &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
