#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blocks.hpp"
#include "families.hpp"
#include "group.hpp"

namespace cycbase {

/// Which case of the classification of primitive groups with a regular
/// cyclic subgroup a group falls into (or none).
struct PrimitiveClass {
  enum class Kind { Affine, SymOrAlt, Projective, Sporadic, NoRegularCyclic };

  Kind kind = Kind::NoRegularCyclic;
  std::size_t n = 0;
  std::size_t p = 0;       // Affine
  bool is_alt = false;     // SymOrAlt
  std::uint32_t d = 0;     // Projective
  std::uint32_t q = 0;     // Projective
  std::string sporadic;    // "PSL2_11", "M11" or "M23"

  /// Order of the socle this class prescribes (1 for NoRegularCyclic).
  order_t socle_order() const;

  std::string describe() const
  {
    switch (kind) {
      case Kind::Affine:
        return "Affine(" + std::to_string(p) + ")";
      case Kind::SymOrAlt:
        return std::string(is_alt ? "Alt(" : "Sym(") + std::to_string(n) + ")";
      case Kind::Projective:
        return "Projective(" + std::to_string(d) + "," + std::to_string(q) + ")";
      case Kind::Sporadic:
        return "Sporadic(" + sporadic + ")";
      case Kind::NoRegularCyclic:
        break;
    }
    return "NoRegularCyclic";
  }
};

inline order_t factorial(std::size_t n)
{
  order_t r = 1;
  for (std::size_t i = 2; i <= n; ++i)
    r *= i;
  return r;
}

inline order_t psl_order(std::uint32_t d, std::uint32_t q)
{
  order_t r = 1;
  for (std::uint32_t i = 0; i < d * (d - 1) / 2; ++i)
    r *= q;
  order_t qi = q;
  for (std::uint32_t i = 2; i <= d; ++i) {
    qi *= q;
    r *= qi - 1;
  }
  return r / std::gcd(d, q - 1);
}

inline order_t PrimitiveClass::socle_order() const
{
  switch (kind) {
    case Kind::Affine:
      return p;
    case Kind::SymOrAlt:
      // Klein four-group for n = 4, prime order for n <= 3
      return n >= 5 ? factorial(n) / 2 : order_t(n == 4 ? 4 : n);
    case Kind::Projective:
      return psl_order(d, q);
    case Kind::Sporadic:
      return sporadic == "PSL2_11" ? 660 : sporadic == "M11" ? 7920 : 10200960;
    case Kind::NoRegularCyclic:
      break;
  }
  return 1;
}

inline bool is_prime(std::size_t n)
{
  if (n < 2)
    return false;
  for (std::size_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

/// q = r^e for a prime r.
inline bool is_prime_power(std::size_t q)
{
  if (q < 2)
    return false;
  std::size_t r = 2;
  while (q % r)
    ++r;
  while (q % r == 0)
    q /= r;
  return q == 1;
}

inline std::size_t largest_prime_factor(std::size_t m)
{
  std::size_t best = 1;
  for (std::size_t d = 2; d * d <= m; ++d)
    while (m % d == 0) {
      best = d;
      m /= d;
    }
  return m > 1 ? m : best;
}

inline std::size_t euler_phi(std::size_t n)
{
  std::size_t res = n;
  for (std::size_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      while (n % d == 0)
        n /= d;
      res -= res / d;
    }
  if (n > 1)
    res -= res / n;
  return res;
}

/// Point stabilizer of 0 transitive on the remaining points.
inline bool is_two_transitive(Group const &g)
{
  if (!is_transitive(g))
    return false;
  if (g.degree() <= 2)
    return true;
  auto stab = pointwise_stabilizer(g, {0});
  auto orb = detail::orbit_mask(g.degree(), stab.generators(), 1);
  for (point_t x = 1; x < g.degree(); ++x)
    if (!orb[x])
      return false;
  return true;
}

inline PrimitiveClass classify_primitive(Group const &k)
{
  std::size_t n = k.degree();
  if (!is_transitive(k) || !minimal_block_system(k).is_single())
    throw ArgumentError("classify_primitive: group is not primitive");
  PrimitiveClass res;
  res.n = n;
  order_t ko = k.order();
  if (n == 1)
    return res;
  if (is_solvable(k)) {
    if (is_prime(n)) {
      res.kind = PrimitiveClass::Kind::Affine;
      res.p = n;
    } else if (ko == factorial(n) || ko * 2 == factorial(n)) {
      res.kind = PrimitiveClass::Kind::SymOrAlt;
      res.is_alt = ko != factorial(n);
    }
    return res;
  }
  Group s = solvable_residual(k);
  order_t so = s.order();
  if (so * 2 == factorial(n)) {
    res.kind = PrimitiveClass::Kind::SymOrAlt;
    res.is_alt = ko == so;
    return res;
  }
  if ((n == 11 && so == 660) || (n == 11 && so == 7920) || (n == 23 && so == 10200960)) {
    res.kind = PrimitiveClass::Kind::Sporadic;
    res.sporadic = so == 660 ? "PSL2_11" : so == 7920 ? "M11" : "M23";
    return res;
  }
  for (std::uint32_t q = 2; q <= n; ++q) {
    if (!is_prime_power(q))
      continue;
    std::size_t count = 1, qd = 1;
    for (std::uint32_t d = 1; count <= n; ++d) {
      qd *= q;
      count += qd;
      // count = (q^(d+1) - 1) / (q - 1)
      if (count == n && psl_order(d + 1, q) == so && is_two_transitive(s)) {
        res.kind = PrimitiveClass::Kind::Projective;
        res.d = d + 1;
        res.q = q;
        return res;
      }
    }
  }
  return res;
}

struct SearchOptions {
  std::uint64_t seed = 1;
  std::size_t draws = 0;              // 0: 100 n^2
  std::size_t enumeration_cap = 1000000;
};

/// A full cycle of K by random search, falling back to running through all
/// elements when |K| is small enough. nullopt means "none exists".
inline std::optional<Perm> search_full_cycle(Group const &k, SearchOptions const &opts)
{
  std::size_t n = k.degree();
  for (auto const &g : k.generators())
    if (is_full_cycle(g))
      return g;
  Rng rng(opts.seed);
  std::size_t draws = opts.draws ? opts.draws : 100 * n * n;
  for (std::size_t i = 0; i < draws; ++i) {
    Perm x = random_element(k, rng);
    if (is_full_cycle(x))
      return x;
  }
  if (k.order() > opts.enumeration_cap)
    throw SearchExhausted("no full cycle found in " + std::to_string(draws) +
                          " draws and the group (order " + k.order().str() +
                          ") is above the enumeration cap");
  std::optional<Perm> found;
  for_each_element(k, [&](std::span<point_t const> x) {
    Perm g(std::vector<point_t>(x.begin(), x.end()), unchecked);
    if (is_full_cycle(g)) {
      found = std::move(g);
      return false;
    }
    return true;
  });
  return found;
}

/// A full cycle of the primitive group K, or nullopt when K has none.
inline std::optional<Perm> find_regular_cyclic(Group const &k, PrimitiveClass const &cls,
                                               SearchOptions const &opts = {})
{
  std::size_t n = k.degree();
  if (n == 1)
    return Perm(1);
  switch (cls.kind) {
    case PrimitiveClass::Kind::NoRegularCyclic:
      return std::nullopt;
    case PrimitiveClass::Kind::SymOrAlt:
      if (cls.is_alt && n % 2 == 0)
        return std::nullopt;
      return full_cycle(n);
    case PrimitiveClass::Kind::Affine: {
      // any element of order divisible by p has a p-cycle power
      Rng rng(opts.seed);
      for (std::size_t i = 0;; ++i) {
        Perm x = i < k.generators().size() ? k.generators()[i] : random_element(k, rng);
        auto ord = element_order(x);
        if (ord % n == 0)
          return x.pow(static_cast<long long>(ord / n));
      }
    }
    case PrimitiveClass::Kind::Projective:
    case PrimitiveClass::Kind::Sporadic:
      break;
  }
  return search_full_cycle(k, opts);
}

/// The solvable groups built around a regular cyclic H = <h> on m points:
/// N(H) = H * prod N_Θ(P^Θ) and N*(H) = N_Δ(H) * prod N_Θ(P^Θ), where P is
/// the subgroup of H of order p (the largest prime dividing m) and Θ runs
/// over the orbits of P.
struct NormalizerTower {
  std::size_t m = 1;
  Perm h;
  std::size_t p = 1;
  Perm p_generator;            // h^(m/p)
  Partition p_system;          // orbits of P
  std::vector<Perm> theta_gens; // generators of N_Θ(P^Θ) for every Θ
  Group n_h;
  Group n_delta;               // holomorph N_Δ(H)
  Group nstar_h;
};

/// Permutation x_i -> x_(a i mod len) along the sequence x, identity
/// elsewhere.
inline Perm multiplier_along(std::size_t degree, std::vector<point_t> const &xs, std::size_t a)
{
  std::vector<point_t> imgs(degree);
  std::iota(imgs.begin(), imgs.end(), point_t{0});
  for (std::size_t i = 0; i < xs.size(); ++i)
    imgs[xs[i]] = xs[(a * i) % xs.size()];
  return Perm(std::move(imgs), unchecked);
}

inline std::size_t primitive_root(std::size_t p)
{
  if (p == 2)
    return 1;
  for (std::size_t g = 2; g < p; ++g) {
    std::size_t x = g, ord = 1;
    while (x != 1) {
      x = x * g % p;
      ++ord;
    }
    if (ord == p - 1)
      return g;
  }
  return 1;
}

inline NormalizerTower build_normalizer_tower(Perm const &h)
{
  std::size_t m = h.degree();
  if (!is_full_cycle(h))
    throw ArgumentError("build_normalizer_tower: H is not regular cyclic");
  NormalizerTower t;
  t.m = m;
  t.h = h;
  if (m == 1) {
    t.p_generator = h;
    t.p_system = Partition{{0}};
    t.n_h = t.n_delta = t.nstar_h = Group(1);
    return t;
  }
  t.p = largest_prime_factor(m);
  t.p_generator = h.pow(static_cast<long long>(m / t.p));
  t.p_system = orbits(m, {t.p_generator});
  std::size_t a = primitive_root(t.p);
  for (auto const &theta : t.p_system) {
    // θ0 = least point, labeled θ0^(g^i) -> i
    std::vector<point_t> xs{theta[0]};
    for (std::size_t i = 1; i < t.p; ++i)
      xs.push_back(t.p_generator[xs.back()]);
    std::vector<point_t> imgs(m);
    std::iota(imgs.begin(), imgs.end(), point_t{0});
    for (std::size_t i = 0; i < t.p; ++i)
      imgs[xs[i]] = xs[(i + 1) % t.p];
    t.theta_gens.emplace_back(std::move(imgs), unchecked);
    if (t.p > 2)
      t.theta_gens.push_back(multiplier_along(m, xs, a));
  }
  std::vector<Perm> ngens{h};
  ngens.insert(ngens.end(), t.theta_gens.begin(), t.theta_gens.end());
  t.n_h = Group(m, ngens);

  std::vector<point_t> ds{0};
  for (std::size_t i = 1; i < m; ++i)
    ds.push_back(h[ds.back()]);
  std::vector<Perm> dgens{h};
  for (std::size_t u : unit_group_generators(m))
    dgens.push_back(multiplier_along(m, ds, u));
  t.n_delta = Group(m, dgens);

  dgens.insert(dgens.end(), t.theta_gens.begin(), t.theta_gens.end());
  t.nstar_h = Group(m, std::move(dgens));
  return t;
}

} // namespace cycbase
