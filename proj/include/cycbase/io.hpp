#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "control.hpp"
#include "corpus.hpp"
#include "cycle_base.hpp"
#include "errors.hpp"
#include "group.hpp"
#include "perm.hpp"

namespace cycbase {

inline constexpr int kSchemaVersion = 1;
inline constexpr char const *kToolVersion = "1.0.0";

using json = nlohmann::ordered_json;

struct GroupFile {
  std::string name;
  Group group;
};

/// Generators are image lists [2,3,1] or cycle strings "(1,2,3)", 1-based.
inline GroupFile parse_group_json(std::string const &text)
{
  json j;
  try {
    j = json::parse(text);
  } catch (json::parse_error const &e) {
    throw ParseError(ParseError::Kind::Malformed, std::string("invalid JSON: ") + e.what());
  }
  auto malformed = [](std::string const &msg) {
    return ParseError(ParseError::Kind::Malformed, msg);
  };
  if (!j.is_object())
    throw malformed("group file must be a JSON object");
  if (!j.contains("degree") || !j["degree"].is_number_unsigned() || j["degree"].get<std::uint64_t>() == 0)
    throw malformed("\"degree\" must be a positive integer");
  if (j.contains("schema") && j["schema"] != kSchemaVersion)
    throw malformed("unsupported schema " + j["schema"].dump());
  auto n = j["degree"].get<std::size_t>();
  if (!j.contains("generators") || !j["generators"].is_array())
    throw malformed("\"generators\" must be an array");
  std::vector<Perm> gens;
  for (auto const &g : j["generators"]) {
    if (g.is_string()) {
      gens.push_back(parse_cycle_string(n, g.get<std::string>()));
    } else if (g.is_array()) {
      if (g.size() != n)
        throw malformed("image list of length " + std::to_string(g.size()) + " for degree " +
                        std::to_string(n));
      std::vector<point_t> imgs;
      for (auto const &x : g) {
        if (!x.is_number_unsigned() || x.get<std::uint64_t>() == 0 || x.get<std::uint64_t>() > n)
          throw ParseError(ParseError::Kind::OutOfRange, "image " + x.dump() + " out of range");
        imgs.push_back(static_cast<point_t>(x.get<std::uint64_t>() - 1));
      }
      gens.emplace_back(std::move(imgs));
    } else {
      throw malformed("generator must be a string or an array");
    }
  }
  GroupFile f;
  if (j.contains("name")) {
    if (!j["name"].is_string())
      throw malformed("\"name\" must be a string");
    f.name = j["name"].get<std::string>();
  }
  f.group = Group(n, std::move(gens));
  return f;
}

inline GroupFile read_group_file(std::string const &path)
{
  std::ifstream in(path);
  if (!in)
    throw ArgumentError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_group_json(ss.str());
}

inline json group_to_json(Group const &g, std::string const &name = {})
{
  json j;
  j["schema"] = kSchemaVersion;
  if (!name.empty())
    j["name"] = name;
  j["degree"] = g.degree();
  json gens = json::array();
  for (auto const &x : g.generators())
    gens.push_back(format_cycle_string(x));
  j["generators"] = std::move(gens);
  return j;
}

/// FNV-1a over the degree and the 1-based image lists of the generators.
inline std::uint64_t input_hash(Group const &g)
{
  std::uint64_t h = 1469598103934665603ULL;
  auto feed = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xffu;
      h *= 1099511628211ULL;
    }
  };
  feed(g.degree());
  for (auto const &x : g.generators()) {
    feed(0xffffffffULL);
    for (point_t y : x.images())
      feed(y + 1);
  }
  return h;
}

inline std::string hex64(std::uint64_t v)
{
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << v;
  return os.str();
}

inline json perms_to_json(std::vector<Perm> const &ps)
{
  json a = json::array();
  for (auto const &p : ps)
    a.push_back(format_cycle_string(p));
  return a;
}

inline json control_to_json(ControlResult const &r)
{
  json j;
  j["conclusion"] = to_string(r.conclusion);
  j["seed"] = r.seed;
  j["order"] = r.m.order().str();
  j["generators"] = perms_to_json(r.m.generators());
  json lens = json::array();
  for (auto const &t : derived_series(r.m))
    lens.push_back(t.order().str());
  j["derived_series_orders"] = std::move(lens);
  json tr = json::array();
  for (auto const &t : r.trace) {
    json x;
    x["depth"] = t.depth;
    x["degree"] = t.degree;
    x["block_size"] = t.block_size;
    x["blocks"] = t.blocks;
    x["step"] = t.step;
    x["branch"] = t.branch;
    x["order_in"] = t.order_in;
    x["order_after"] = t.order_after;
    x["order_out"] = t.order_out;
    if (!t.detail.empty())
      x["detail"] = t.detail;
    tr.push_back(std::move(x));
  }
  j["trace"] = std::move(tr);
  return j;
}

inline json cycle_base_to_json(CycleBaseResult const &r)
{
  json j;
  j["method"] = r.method;
  j["verified"] = r.verified;
  j["phi_bound"] = r.phi_bound;
  j["candidates"] = r.candidates;
  j["base"] = perms_to_json(r.base);
  return j;
}

/// Certificate for a cycle-base run. `checks` holds named outcomes of any
/// extra verification the caller ran.
inline json make_certificate(GroupFile const &in, CycleBaseResult const &r, json checks = json::object())
{
  json j;
  j["schema"] = kSchemaVersion;
  j["tool"] = "cycbase";
  j["tool_version"] = kToolVersion;
  json input;
  if (!in.name.empty())
    input["name"] = in.name;
  input["degree"] = in.group.degree();
  input["order"] = in.group.order().str();
  input["hash"] = hex64(input_hash(in.group));
  j["input"] = std::move(input);
  j["seed"] = r.control.seed;
  j["control"] = control_to_json(r.control);
  j["cycle_base"] = cycle_base_to_json(r);
  j["checks"] = std::move(checks);
  return j;
}

/// Base list of a certificate, parsed back.
inline std::vector<Perm> base_from_certificate(json const &cert)
{
  auto n = cert.at("input").at("degree").get<std::size_t>();
  std::vector<Perm> res;
  for (auto const &s : cert.at("cycle_base").at("base"))
    res.push_back(parse_cycle_string(n, s.get<std::string>()));
  return res;
}

inline json oracle_to_json(std::vector<OracleClass> const &classes)
{
  json a = json::array();
  for (auto const &c : classes) {
    json x;
    x["representative"] = format_cycle_string(c.representative);
    x["subgroups"] = c.subgroups;
    a.push_back(std::move(x));
  }
  return a;
}

/// Oracle results for every enumerable corpus entry, the golden-file form.
inline json oracle_golden(Corpus const &corpus, std::size_t cap)
{
  json j;
  j["schema"] = kSchemaVersion;
  j["oracle_version"] = kOracleVersion;
  j["profile"] = corpus.profile;
  json entries = json::array();
  for (auto const &e : corpus.entries) {
    if (!e.enumerable)
      continue;
    json x;
    x["name"] = e.name;
    x["degree"] = e.group.degree();
    x["order"] = e.group.order().str();
    x["hash"] = hex64(input_hash(e.group));
    x["classes"] = oracle_to_json(oracle_cyc(e.group, cap));
    entries.push_back(std::move(x));
  }
  j["entries"] = std::move(entries);
  return j;
}

} // namespace cycbase
