#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace cycbase {

/// Points are 0-based internally and 1-based in every text format.
using point_t = std::uint32_t;

struct unchecked_t {
  explicit unchecked_t() = default;
};
inline constexpr unchecked_t unchecked{};

/// A permutation of {0, ..., n-1} stored as an image table. Acts on the
/// right: x^(gh) = (x^g)^h, so `g * h` means "g, then h".
class Perm {
 public:
  Perm() = default;

  explicit Perm(std::size_t degree) : images_(degree)
  {
    std::iota(images_.begin(), images_.end(), point_t{0});
  }

  explicit Perm(std::vector<point_t> images) : images_(std::move(images))
  {
    std::vector<bool> seen(images_.size(), false);
    for (point_t y : images_) {
      if (y >= images_.size())
        throw ParseError(ParseError::Kind::OutOfRange,
                         "image " + std::to_string(y + 1) + " out of range");
      if (seen[y])
        throw ParseError(ParseError::Kind::RepeatedPoint,
                         "image " + std::to_string(y + 1) + " repeated");
      seen[y] = true;
    }
  }

  Perm(std::vector<point_t> images, unchecked_t) noexcept
    : images_(std::move(images)) {}

  /// Builds a permutation from 1-based cycles.
  static Perm from_cycles(std::size_t degree,
                          std::vector<std::vector<point_t>> const &cycles)
  {
    Perm res(degree);
    std::vector<bool> used(degree, false);
    for (auto const &cycle : cycles) {
      for (point_t x : cycle) {
        if (x < 1 || x > degree)
          throw ParseError(ParseError::Kind::OutOfRange,
                           "point " + std::to_string(x) + " out of range 1.." +
                               std::to_string(degree));
        if (used[x - 1])
          throw ParseError(ParseError::Kind::RepeatedPoint,
                           "point " + std::to_string(x) + " repeated");
        used[x - 1] = true;
      }
      for (std::size_t i = 0; i < cycle.size(); ++i)
        res.images_[cycle[i] - 1] = cycle[(i + 1) % cycle.size()] - 1;
    }
    return res;
  }

  std::size_t degree() const noexcept { return images_.size(); }

  point_t operator[](point_t x) const noexcept { return images_[x]; }

  std::span<point_t const> images() const noexcept { return images_; }

  bool is_identity() const noexcept
  {
    for (point_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i)
        return false;
    return true;
  }

  /// Smallest moved point, or degree() for the identity.
  point_t first_moved() const noexcept
  {
    for (point_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i)
        return i;
    return static_cast<point_t>(images_.size());
  }

  Perm operator*(Perm const &rhs) const
  {
    if (rhs.degree() != degree())
      throw DegreeError("compose: degree " + std::to_string(degree()) +
                        " vs " + std::to_string(rhs.degree()));
    std::vector<point_t> res(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
      res[i] = rhs.images_[images_[i]];
    return Perm(std::move(res), unchecked);
  }

  Perm &operator*=(Perm const &rhs) { return *this = *this * rhs; }

  Perm operator~() const
  {
    std::vector<point_t> res(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
      res[images_[i]] = static_cast<point_t>(i);
    return Perm(std::move(res), unchecked);
  }

  /// g^e for any integer e.
  Perm pow(long long e) const
  {
    Perm base = e < 0 ? ~*this : *this;
    unsigned long long k = e < 0 ? 0ULL - static_cast<unsigned long long>(e)
                                 : static_cast<unsigned long long>(e);
    Perm res(degree());
    while (k) {
      if (k & 1u)
        res *= base;
      base *= base;
      k >>= 1u;
    }
    return res;
  }

  friend bool operator==(Perm const &, Perm const &) = default;
  friend auto operator<=>(Perm const &lhs, Perm const &rhs)
  {
    if (auto c = lhs.degree() <=> rhs.degree(); c != 0)
      return c;
    return lhs.images_ <=> rhs.images_;
  }

  std::size_t hash() const noexcept
  {
    std::uint64_t h = 1469598103934665603ULL;
    for (point_t x : images_) {
      h ^= x;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }

 private:
  std::vector<point_t> images_;
};

struct PermHash {
  std::size_t operator()(Perm const &g) const noexcept { return g.hash(); }
};

inline Perm compose(Perm const &g, Perm const &h) { return g * h; }

inline Perm inverse(Perm const &g) { return ~g; }

/// k^-1 g k.
inline Perm conjugate(Perm const &g, Perm const &k)
{
  if (g.degree() != k.degree())
    throw DegreeError("conjugate: degree mismatch");
  // (x^k)^(k^-1 g k) = (x^g)^k
  std::vector<point_t> res(g.degree());
  for (point_t x = 0; x < g.degree(); ++x)
    res[k[x]] = k[g[x]];
  return Perm(std::move(res), unchecked);
}

/// Disjoint cycles of length > 1, each starting at its smallest point, sorted
/// by that point.
inline std::vector<std::vector<point_t>> cycles(Perm const &g)
{
  std::vector<std::vector<point_t>> res;
  std::vector<bool> seen(g.degree(), false);
  for (point_t x = 0; x < g.degree(); ++x) {
    if (seen[x] || g[x] == x)
      continue;
    std::vector<point_t> cycle;
    for (point_t y = x; !seen[y]; y = g[y]) {
      seen[y] = true;
      cycle.push_back(y);
    }
    res.push_back(std::move(cycle));
  }
  return res;
}

/// Multiset of cycle lengths (fixed points included), sorted descending.
struct CycleType {
  std::vector<std::size_t> lengths;

  friend bool operator==(CycleType const &, CycleType const &) = default;
};

inline CycleType cycle_type(Perm const &g)
{
  CycleType res;
  std::vector<bool> seen(g.degree(), false);
  for (point_t x = 0; x < g.degree(); ++x) {
    if (seen[x])
      continue;
    std::size_t len = 0;
    for (point_t y = x; !seen[y]; y = g[y]) {
      seen[y] = true;
      ++len;
    }
    res.lengths.push_back(len);
  }
  std::sort(res.lengths.rbegin(), res.lengths.rend());
  return res;
}

inline bool is_full_cycle(Perm const &g)
{
  if (g.degree() == 0)
    return false;
  std::size_t len = 1;
  for (point_t y = g[0]; y != 0; y = g[y])
    ++len;
  return len == g.degree();
}

/// lcm of the cycle lengths; throws std::overflow_error past 64 bits.
inline std::uint64_t element_order(Perm const &g)
{
  std::uint64_t order = 1;
  for (std::size_t len : cycle_type(g).lengths) {
    std::uint64_t q = len / std::gcd(order, static_cast<std::uint64_t>(len));
    if (order > std::numeric_limits<std::uint64_t>::max() / q)
      throw std::overflow_error("element order exceeds 64 bits");
    order *= q;
  }
  return order;
}

namespace detail {

class CycleParser {
 public:
  explicit CycleParser(std::string_view text) : text_(text) {}

  void skip_ws()
  {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool at_end()
  {
    skip_ws();
    return pos_ == text_.size();
  }

  bool accept(char c)
  {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c)
  {
    if (!accept(c))
      fail(std::string("expected '") + c + "'");
  }

  std::uint64_t number()
  {
    skip_ws();
    std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > std::numeric_limits<point_t>::max())
        throw ParseError(ParseError::Kind::OutOfRange, "number too large");
      ++pos_;
    }
    if (start == pos_)
      fail("expected a number");
    return v;
  }

  /// Sequence of "(a,b,...)" groups; "()" is the empty product.
  std::vector<std::vector<point_t>> cycle_list()
  {
    std::vector<std::vector<point_t>> res;
    while (accept('(')) {
      std::vector<point_t> cycle;
      if (!accept(')')) {
        do {
          cycle.push_back(static_cast<point_t>(number()));
        } while (accept(','));
        expect(')');
      }
      if (!cycle.empty())
        res.push_back(std::move(cycle));
    }
    return res;
  }

  [[noreturn]] void fail(std::string const &msg) const
  {
    throw ParseError(ParseError::Kind::Malformed,
                     msg + " at offset " + std::to_string(pos_) + " in \"" +
                         std::string(text_) + "\"");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace detail

/// Parses a bare cycle string such as "(1,2,3)(4,5)" or "()" at a given
/// degree.
inline Perm parse_cycle_string(std::size_t degree, std::string_view text)
{
  detail::CycleParser p(text);
  if (p.at_end())
    p.fail("empty cycle string");
  auto cs = p.cycle_list();
  if (!p.at_end())
    p.fail("trailing characters");
  return Perm::from_cycles(degree, cs);
}

/// Parses "n=6: (1,2,3)(4,5)".
inline Perm parse_cycles(std::string_view text)
{
  detail::CycleParser p(text);
  p.expect('n');
  p.expect('=');
  auto n = p.number();
  if (n == 0)
    p.fail("degree must be positive");
  p.expect(':');
  auto cs = p.cycle_list();
  if (!p.at_end())
    p.fail("trailing characters");
  return Perm::from_cycles(static_cast<std::size_t>(n), cs);
}

/// "(1,2,3)(4,5)"; "()" for the identity.
inline std::string format_cycle_string(Perm const &g)
{
  auto cs = cycles(g);
  if (cs.empty())
    return "()";
  std::ostringstream os;
  for (auto const &cycle : cs) {
    os << '(';
    for (std::size_t i = 0; i < cycle.size(); ++i)
      os << (i ? "," : "") << cycle[i] + 1;
    os << ')';
  }
  return os.str();
}

inline std::string format_cycles(Perm const &g)
{
  return "n=" + std::to_string(g.degree()) + ": " + format_cycle_string(g);
}

} // namespace cycbase
