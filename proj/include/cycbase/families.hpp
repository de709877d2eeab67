#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "group.hpp"
#include "perm.hpp"

namespace cycbase {

/// Arithmetic in GF(p^k) for small fields; elements are encoded as base-p
/// digit strings of polynomial coefficients.
class FiniteField {
 public:
  explicit FiniteField(std::uint32_t q)
  {
    for (std::uint32_t d = 2; d <= q; ++d)
      if (q % d == 0) {
        p_ = d;
        break;
      }
    std::uint32_t r = q;
    k_ = 0;
    while (r % p_ == 0) {
      r /= p_;
      ++k_;
    }
    if (q < 2 || r != 1)
      throw ArgumentError("field order must be a prime power");
    q_ = q;
    modulus_ = find_irreducible();
    mul_.assign(q_ * q_, 0);
    for (std::uint32_t a = 0; a < q_; ++a)
      for (std::uint32_t b = 0; b < q_; ++b)
        mul_[a * q_ + b] = slow_mul(a, b);
    for (std::uint32_t g = 2; g < q_ || (q_ == 2 && g == 2); ++g) {
      std::uint32_t cand = q_ == 2 ? 1 : g;
      if (multiplicative_order(cand) == q_ - 1) {
        primitive_ = cand;
        break;
      }
      if (q_ == 2)
        break;
    }
    if (q_ == 2)
      primitive_ = 1;
  }

  std::uint32_t order() const noexcept { return q_; }
  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t degree() const noexcept { return k_; }
  std::uint32_t primitive() const noexcept { return primitive_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const
  {
    std::uint32_t res = 0, scale = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
      res += ((a % p_ + b % p_) % p_) * scale;
      a /= p_;
      b /= p_;
      scale *= p_;
    }
    return res;
  }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[a * q_ + b]; }

  std::uint32_t pow(std::uint32_t a, std::uint32_t e) const
  {
    std::uint32_t res = 1;
    while (e--)
      res = mul(res, a);
    return res;
  }

  std::uint32_t frobenius(std::uint32_t a) const { return pow(a, p_); }

 private:
  std::vector<std::uint32_t> digits(std::uint32_t a, std::size_t len) const
  {
    std::vector<std::uint32_t> d(len, 0);
    for (std::size_t i = 0; i < len && a; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    return d;
  }

  /// Product of polynomials reduced modulo `modulus_` (coefficients
  /// ascending, monic of degree k).
  std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const
  {
    auto da = digits(a, k_), db = digits(b, k_);
    std::vector<std::uint32_t> prod(2 * k_ + 1, 0);
    for (std::uint32_t i = 0; i < k_; ++i)
      for (std::uint32_t j = 0; j < k_; ++j)
        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    for (std::size_t deg = prod.size(); deg-- > k_;) {
      std::uint32_t c = prod[deg];
      if (!c)
        continue;
      for (std::uint32_t i = 0; i <= k_; ++i)
        prod[deg - k_ + i] = (prod[deg - k_ + i] + (p_ - c) * modulus_[i]) % p_;
    }
    std::uint32_t res = 0, scale = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
      res += prod[i] * scale;
      scale *= p_;
    }
    return res;
  }

  std::vector<std::uint32_t> find_irreducible() const
  {
    std::uint32_t count = 1;
    for (std::uint32_t i = 0; i < k_; ++i)
      count *= p_;
    for (std::uint32_t low = 0; low < count; ++low) {
      auto coeffs = digits(low, k_);
      coeffs.push_back(1);
      if (k_ == 1 || is_irreducible(coeffs))
        return coeffs;
    }
    throw std::logic_error("no irreducible polynomial found");
  }

  /// No roots and (for degree <= 3) that suffices; degree 4+ also checks
  /// quadratic factors by trial division.
  bool is_irreducible(std::vector<std::uint32_t> const &f) const
  {
    auto deg = f.size() - 1;
    for (std::uint32_t fd = 1; fd <= deg / 2; ++fd) {
      std::uint32_t count = 1;
      for (std::uint32_t i = 0; i < fd; ++i)
        count *= p_;
      for (std::uint32_t low = 0; low < count; ++low) {
        auto g = digits(low, fd);
        g.push_back(1);
        if (divides(g, f))
          return false;
      }
    }
    return true;
  }

  bool divides(std::vector<std::uint32_t> const &g, std::vector<std::uint32_t> f) const
  {
    auto dg = g.size() - 1;
    for (std::size_t deg = f.size(); deg-- > dg;) {
      std::uint32_t c = f[deg];
      if (!c)
        continue;
      for (std::size_t i = 0; i <= dg; ++i)
        f[deg - dg + i] = (f[deg - dg + i] + (p_ - c) * g[i]) % p_;
    }
    for (std::size_t i = 0; i < dg; ++i)
      if (f[i])
        return false;
    return true;
  }

  std::uint32_t multiplicative_order(std::uint32_t a) const
  {
    std::uint32_t x = a, ord = 1;
    while (x != 1) {
      x = mul(x, a);
      ++ord;
      if (ord > q_)
        return 0;
    }
    return ord;
  }

  std::uint32_t p_ = 0, k_ = 0, q_ = 0, primitive_ = 1;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> mul_;
};

inline Perm cycle_perm(std::size_t n, std::vector<point_t> const &one_based)
{
  return Perm::from_cycles(n, {one_based});
}

inline Perm full_cycle(std::size_t n)
{
  std::vector<point_t> imgs(n);
  for (std::size_t i = 0; i < n; ++i)
    imgs[i] = static_cast<point_t>((i + 1) % n);
  return Perm(std::move(imgs), unchecked);
}

inline Group cyclic_group(std::size_t n) { return Group(n, {full_cycle(n)}); }

inline Group symmetric_group(std::size_t n)
{
  if (n == 1)
    return Group(1);
  if (n == 2)
    return Group(2, {full_cycle(2)});
  return Group(n, {full_cycle(n), cycle_perm(n, {1, 2})});
}

inline Group alternating_group(std::size_t n)
{
  if (n < 3)
    return Group(n);
  std::vector<Perm> gens;
  for (point_t k = 3; k <= n; ++k)
    gens.push_back(cycle_perm(n, {1, 2, k}));
  return Group(n, std::move(gens));
}

/// Symmetries of the n-gon acting on its vertices.
inline Group dihedral_group(std::size_t n)
{
  std::vector<point_t> refl(n);
  for (std::size_t i = 0; i < n; ++i)
    refl[i] = static_cast<point_t>((n - i) % n);
  return Group(n, {full_cycle(n), Perm(std::move(refl), unchecked)});
}

/// Multiplier map x -> a*x on Z_m (a must be a unit).
inline Perm multiplier_perm(std::size_t m, std::size_t a)
{
  std::vector<point_t> imgs(m);
  for (std::size_t x = 0; x < m; ++x)
    imgs[x] = static_cast<point_t>((a * x) % m);
  return Perm(std::move(imgs));
}

/// A small generating set of the unit group of Z_m, chosen greedily.
inline std::vector<std::size_t> unit_group_generators(std::size_t m)
{
  std::vector<std::size_t> gens;
  if (m <= 2)
    return gens;
  std::vector<bool> reached(m, false);
  reached[1] = true;
  std::vector<std::size_t> elems{1};
  for (std::size_t a = 2; a < m; ++a) {
    if (std::gcd(a, m) != 1 || reached[a])
      continue;
    gens.push_back(a);
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t g : gens) {
        std::size_t y = (elems[i] * g) % m;
        if (!reached[y]) {
          reached[y] = true;
          elems.push_back(y);
        }
      }
  }
  return gens;
}

/// Hol(C_m) = normalizer of <(0,1,...,m-1)> in Sym(m); AGL(1,p) when m = p.
inline Group holomorph_cyclic(std::size_t m)
{
  std::vector<Perm> gens{full_cycle(m)};
  for (std::size_t a : unit_group_generators(m))
    gens.push_back(multiplier_perm(m, a));
  return Group(m, std::move(gens));
}

/// AGL(1,q) acting on GF(q).
inline Group affine_line_group(std::uint32_t q)
{
  FiniteField f(q);
  std::vector<Perm> gens;
  std::uint32_t basis = 1;
  for (std::uint32_t i = 0; i < f.degree(); ++i) {
    std::vector<point_t> imgs(q);
    for (std::uint32_t x = 0; x < q; ++x)
      imgs[x] = f.add(x, basis);
    gens.emplace_back(std::move(imgs));
    basis = f.mul(basis, f.primitive());
  }
  if (q > 2) {
    std::vector<point_t> imgs(q);
    for (std::uint32_t x = 0; x < q; ++x)
      imgs[x] = f.mul(x, f.primitive());
    gens.emplace_back(std::move(imgs));
  }
  return Group(q, std::move(gens));
}

/// PGL_d(q) (or PΓL_d(q) with `semilinear`) acting on the points of the
/// projective space, points listed as normalized vectors in lexicographic
/// order.
inline Group projective_group(std::uint32_t d, std::uint32_t q, bool semilinear = false)
{
  FiniteField f(q);
  std::vector<std::vector<std::uint32_t>> points;
  std::vector<std::uint32_t> v(d, 0);
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < d; ++i)
    total *= q;
  for (std::uint64_t code = 1; code < total; ++code) {
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < d; ++i) {
      v[d - 1 - i] = static_cast<std::uint32_t>(c % q);
      c /= q;
    }
    std::size_t lead = 0;
    while (v[lead] == 0)
      ++lead;
    if (v[lead] == 1)
      points.push_back(v);
  }
  auto normalize = [&](std::vector<std::uint32_t> w) {
    std::size_t lead = 0;
    while (w[lead] == 0)
      ++lead;
    std::uint32_t inv = 1;
    for (std::uint32_t x = 1; x < q; ++x)
      if (f.mul(w[lead], x) == 1)
        inv = x;
    for (auto &c : w)
      c = f.mul(c, inv);
    return w;
  };
  auto index_of = [&](std::vector<std::uint32_t> const &w) {
    for (std::size_t i = 0; i < points.size(); ++i)
      if (points[i] == w)
        return static_cast<point_t>(i);
    throw std::logic_error("projective point not found");
  };
  // row vector times matrix
  auto act = [&](std::vector<std::vector<std::uint32_t>> const &mat) {
    std::vector<point_t> imgs(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      std::vector<std::uint32_t> w(d, 0);
      for (std::uint32_t c = 0; c < d; ++c)
        for (std::uint32_t r = 0; r < d; ++r)
          w[c] = f.add(w[c], f.mul(points[i][r], mat[r][c]));
      imgs[i] = index_of(normalize(w));
    }
    return Perm(std::move(imgs));
  };
  auto identity = [&] {
    std::vector<std::vector<std::uint32_t>> m(d, std::vector<std::uint32_t>(d, 0));
    for (std::uint32_t i = 0; i < d; ++i)
      m[i][i] = 1;
    return m;
  };
  std::vector<Perm> gens;
  std::uint32_t lambda = 1;
  for (std::uint32_t b = 0; b < f.degree(); ++b) {
    for (std::uint32_t i = 0; i < d; ++i)
      for (std::uint32_t j = 0; j < d; ++j) {
        if (i == j)
          continue;
        auto m = identity();
        m[i][j] = lambda;
        gens.push_back(act(m));
      }
    lambda = f.mul(lambda, f.primitive());
  }
  if (q > 2) {
    auto m = identity();
    m[0][0] = f.primitive();
    gens.push_back(act(m));
  }
  if (semilinear && f.degree() > 1) {
    std::vector<point_t> imgs(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      auto w = points[i];
      for (auto &c : w)
        c = f.frobenius(c);
      imgs[i] = index_of(normalize(w));
    }
    gens.emplace_back(std::move(imgs));
  }
  return Group(points.size(), std::move(gens));
}

/// Imprimitive wreath product A wr B on Δ×Γ; point (δ, γ) is γ·|Δ| + δ.
/// Blocks are the consecutive runs of |Δ| points.
inline Group wreath_product(Group const &a, Group const &b)
{
  std::size_t m = a.degree(), k = b.degree(), n = m * k;
  std::vector<Perm> gens;
  // one copy of A per orbit of B suffices to generate the base group
  std::vector<bool> covered(k, false);
  for (std::size_t blk = 0; blk < k; ++blk) {
    if (covered[blk])
      continue;
    auto orb = detail::orbit_mask(k, b.generators(), static_cast<point_t>(blk));
    for (std::size_t j = 0; j < k; ++j)
      if (orb[j])
        covered[j] = true;
    for (auto const &g : a.generators()) {
      std::vector<point_t> imgs(n);
      for (std::size_t x = 0; x < n; ++x)
        imgs[x] = static_cast<point_t>(x);
      for (std::size_t d = 0; d < m; ++d)
        imgs[blk * m + d] = static_cast<point_t>(blk * m + g[static_cast<point_t>(d)]);
      gens.emplace_back(std::move(imgs), unchecked);
    }
  }
  for (auto const &g : b.generators()) {
    std::vector<point_t> imgs(n);
    for (std::size_t blk = 0; blk < k; ++blk)
      for (std::size_t d = 0; d < m; ++d)
        imgs[blk * m + d] = static_cast<point_t>(g[static_cast<point_t>(blk)] * m + d);
    gens.emplace_back(std::move(imgs), unchecked);
  }
  return Group(n, std::move(gens));
}

/// Intransitive direct product on the disjoint union (A's points first).
inline Group direct_product(Group const &a, Group const &b)
{
  std::size_t n = a.degree() + b.degree();
  std::vector<Perm> gens;
  for (auto const &g : a.generators()) {
    std::vector<point_t> imgs(n);
    std::iota(imgs.begin(), imgs.end(), point_t{0});
    for (point_t x = 0; x < a.degree(); ++x)
      imgs[x] = g[x];
    gens.emplace_back(std::move(imgs), unchecked);
  }
  for (auto const &g : b.generators()) {
    std::vector<point_t> imgs(n);
    std::iota(imgs.begin(), imgs.end(), point_t{0});
    for (point_t x = 0; x < b.degree(); ++x)
      imgs[a.degree() + x] = static_cast<point_t>(a.degree() + g[x]);
    gens.emplace_back(std::move(imgs), unchecked);
  }
  return Group(n, std::move(gens));
}

/// Conjugate k^-1 G k.
inline Group conjugate_group(Group const &g, Perm const &k)
{
  std::vector<Perm> gens;
  for (auto const &x : g.generators())
    gens.push_back(conjugate(x, k));
  return Group(g.degree(), std::move(gens));
}

/// Mathieu group M11 on 11 points.
inline Group mathieu11()
{
  return Group(11, {parse_cycle_string(11, "(1,2,3,4,5,6,7,8,9,10,11)"),
                    parse_cycle_string(11, "(3,7,11,8)(4,10,5,6)")});
}

/// Mathieu group M23 on 23 points.
inline Group mathieu23()
{
  return Group(23, {full_cycle(23),
                    parse_cycle_string(23, "(3,17,10,7,9)(4,13,14,19,5)(8,18,11,12,23)"
                                           "(15,20,22,21,16)")});
}

/// PSL_2(11) in its exceptional action on 11 points (automorphisms of the
/// Paley biplane).
inline Group psl2_11_on_11()
{
  return Group(11, {full_cycle(11), parse_cycle_string(11, "(3,7,10)(4,8,5)(6,11,9)")});
}

} // namespace cycbase
