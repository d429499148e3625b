#pragma once

// Builders for the group families used by the library: permutation closure,
// cyclic/dihedral/dicyclic/extraspecial groups, AGL(1,q), SL(2,p), direct,
// semidirect and central products, and two parametrised semidirect families.

#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "soclelab/errors.hpp"
#include "soclelab/finite_field.hpp"
#include "soclelab/group.hpp"
#include "soclelab/isomorphism.hpp"

namespace soclelab {

/// Images of the points 0..k-1.
using Perm = std::vector<std::uint32_t>;

struct PermGroup {
  FiniteGroup group;
  std::vector<Perm> elements;  // element i as a permutation
};

inline void check_permutation(const Perm& g, std::size_t degree) {
  if (g.size() != degree) throw invalid_input("permutation has wrong degree");
  std::vector<char> seen(degree, 0);
  for (auto x : g) {
    if (x >= degree || seen[x]) throw invalid_input("generator is not a permutation");
    seen[x] = 1;
  }
}

/// Closure under composition, breadth first from the identity. Products act
/// left to right: x^(ab) = (x^a)^b.
inline PermGroup permutation_closure(const std::vector<Perm>& gens, std::size_t degree, GroupOptions opts = {}) {
  for (const auto& g : gens) check_permutation(g, degree);
  Perm id(degree);
  std::iota(id.begin(), id.end(), 0u);
  std::map<Perm, Elem> index;
  std::vector<Perm> elems{id};
  std::vector<Elem> parent{0};
  std::vector<std::uint32_t> via{0};
  index[id] = 0;
  std::vector<std::vector<Elem>> right;  // right[x][s] = x * gens[s]
  for (std::size_t i = 0; i < elems.size(); ++i) {
    std::vector<Elem> row(gens.size());
    for (std::size_t s = 0; s < gens.size(); ++s) {
      Perm y(degree);
      for (std::size_t pt = 0; pt < degree; ++pt) y[pt] = gens[s][elems[i][pt]];
      auto it = index.find(y);
      if (it == index.end()) {
        if (elems.size() >= opts.max_order)
          throw unsupported_input("permutation group exceeds the order cap " + std::to_string(opts.max_order));
        const Elem id_new = static_cast<Elem>(elems.size());
        index.emplace(y, id_new);
        elems.push_back(std::move(y));
        parent.push_back(static_cast<Elem>(i));
        via.push_back(static_cast<std::uint32_t>(s));
        row[s] = id_new;
      } else {
        row[s] = it->second;
      }
    }
    right.push_back(std::move(row));
  }
  const std::size_t n = elems.size();
  std::vector<Elem> flat(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    flat[a * n] = static_cast<Elem>(a);
    for (std::size_t b = 1; b < n; ++b) flat[a * n + b] = right[flat[a * n + parent[b]]][via[b]];
  }
  return {FiniteGroup::trusted(n, std::move(flat)), std::move(elems)};
}

namespace detail {

template <class F>
FiniteGroup table_group(std::size_t n, F&& mul) {
  std::vector<Elem> flat(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) flat[a * n + b] = static_cast<Elem>(mul(a, b));
  return FiniteGroup::trusted(n, std::move(flat));
}

inline void check_order(std::size_t n, const GroupOptions& opts) {
  if (n > opts.max_order)
    throw unsupported_input("group order " + std::to_string(n) + " exceeds the order cap " + std::to_string(opts.max_order));
}

}  // namespace detail

inline FiniteGroup cyclic_group(std::size_t m, GroupOptions opts = {}) {
  if (m == 0) throw invalid_input("cyclic group order must be positive");
  detail::check_order(m, opts);
  return detail::table_group(m, [m](std::size_t a, std::size_t b) { return (a + b) % m; });
}

/// Dihedral group of order n (n even): r^i s^j stored at i + (n/2) j.
inline FiniteGroup dihedral_group(std::size_t n, GroupOptions opts = {}) {
  if (n < 2 || n % 2) throw invalid_input("dihedral group order must be even and at least 2");
  detail::check_order(n, opts);
  const std::size_t m = n / 2;
  return detail::table_group(n, [m](std::size_t x, std::size_t y) {
    const std::size_t i = x % m, a = x / m, k = y % m, b = y / m;
    const std::size_t r = a ? (i + m - k) % m : (i + k) % m;
    return r + m * ((a + b) % 2);
  });
}

/// Dicyclic group of order 4m: a^i b^j with a^(2m) = 1, b^2 = a^m, b a b^-1 = a^-1.
inline FiniteGroup dicyclic_group(std::size_t m, GroupOptions opts = {}) {
  if (m < 1) throw invalid_input("dicyclic parameter must be positive");
  detail::check_order(4 * m, opts);
  const std::size_t n = 2 * m;
  return detail::table_group(4 * m, [n, m](std::size_t x, std::size_t y) {
    const std::size_t i = x % n, j = x / n, k = y % n, l = y / n;
    if (!j) return (i + k) % n + n * l;
    std::size_t r = (i + n - k) % n;
    if (l) return (r + m) % n;  // b^2 = a^m
    return r + n;
  });
}

/// Generalized quaternion group of order 2^k, k >= 3.
inline FiniteGroup quaternion_group(std::size_t order, GroupOptions opts = {}) {
  if (order < 8 || (order & (order - 1))) throw invalid_input("quaternion group order must be a power of two >= 8");
  return dicyclic_group(order / 4, opts);
}

inline FiniteGroup direct_product(const std::vector<FiniteGroup>& factors, GroupOptions opts = {}) {
  std::size_t n = 1;
  for (const auto& f : factors) {
    n *= f.order();
    detail::check_order(n, opts);
  }
  return detail::table_group(n, [&](std::size_t x, std::size_t y) {
    std::size_t out = 0, scale = 1;
    for (const auto& f : factors) {
      const std::size_t m = f.order();
      out += scale * f.mul(static_cast<Elem>(x % m), static_cast<Elem>(y % m));
      x /= m;
      y /= m;
      scale *= m;
    }
    return out;
  });
}

inline FiniteGroup elementary_abelian_group(std::uint32_t p, std::uint32_t d, GroupOptions opts = {}) {
  check_modulus(p);
  std::vector<FiniteGroup> f(d, cyclic_group(p, opts));
  return direct_product(f, opts);
}

/// Heisenberg group mod p (exponent p) or C_{p^2} x| C_p (exponent p^2);
/// for p = 2 these are D_8 and Q_8.
inline FiniteGroup extraspecial_group(std::uint32_t p, bool plus_type, GroupOptions opts = {}) {
  check_modulus(p);
  if (p == 2) return plus_type ? dihedral_group(8, opts) : quaternion_group(8, opts);
  const std::size_t q = p;
  detail::check_order(q * q * q, opts);
  if (plus_type)
    return detail::table_group(q * q * q, [q](std::size_t x, std::size_t y) {
      const std::size_t a = x % q, b = x / q % q, c = x / (q * q);
      const std::size_t a2 = y % q, b2 = y / q % q, c2 = y / (q * q);
      return (a + a2) % q + q * ((b + b2) % q) + q * q * ((c + c2 + a * b2) % q);
    });
  const std::size_t q2 = q * q;
  return detail::table_group(q * q2, [q, q2](std::size_t x, std::size_t y) {
    const std::size_t u = x % q2, s = x / q2, u2 = y % q2, t = y / q2;
    std::size_t f = 1;
    for (std::size_t i = 0; i < s; ++i) f = f * (1 + q) % q2;
    return (u + u2 * f) % q2 + q2 * ((s + t) % q);
  });
}

/// Affine maps x -> a x + b of F_q; element (a, b) stored at b + q (a - 1),
/// with a, b in the field's integer encoding. Composition: first the right
/// factor, then the left one.
inline FiniteGroup agl1_group(std::uint64_t q, GroupOptions opts = {}) {
  GaloisField f = GaloisField::of_order(q);
  const std::size_t n = f.order() * (f.order() - 1);
  detail::check_order(n, opts);
  const std::uint32_t Q = f.order();
  return detail::table_group(n, [&f, Q](std::size_t x, std::size_t y) {
    const std::uint32_t a1 = static_cast<std::uint32_t>(x / Q + 1), b1 = static_cast<std::uint32_t>(x % Q);
    const std::uint32_t a2 = static_cast<std::uint32_t>(y / Q + 1), b2 = static_cast<std::uint32_t>(y % Q);
    const std::uint32_t a = f.mul(a1, a2), b = f.add(f.mul(a1, b2), b1);
    return std::size_t(b) + std::size_t(Q) * (a - 1);
  });
}

/// SL(2, p) as 2x2 matrices mod p, identity first, then lexicographic order
/// of (a, b, c, d).
inline FiniteGroup sl2_group(std::uint32_t p, GroupOptions opts = {}) {
  check_modulus(p);
  std::vector<std::array<std::uint32_t, 4>> mats{{1, 0, 0, 1}};
  for (std::uint32_t a = 0; a < p; ++a)
    for (std::uint32_t b = 0; b < p; ++b)
      for (std::uint32_t c = 0; c < p; ++c)
        for (std::uint32_t d = 0; d < p; ++d)
          if ((std::uint64_t(a) * d + std::uint64_t(p - 1) * b % p * c) % p == 1 && !(a == 1 && b == 0 && c == 0 && d == 1))
            mats.push_back({a, b, c, d});
  detail::check_order(mats.size(), opts);
  std::map<std::array<std::uint32_t, 4>, std::size_t> idx;
  for (std::size_t i = 0; i < mats.size(); ++i) idx[mats[i]] = i;
  return detail::table_group(mats.size(), [&](std::size_t x, std::size_t y) {
    const auto& m = mats[x];
    const auto& k = mats[y];
    std::array<std::uint32_t, 4> r{(m[0] * k[0] + m[1] * k[2]) % p, (m[0] * k[1] + m[1] * k[3]) % p,
                                   (m[2] * k[0] + m[3] * k[2]) % p, (m[2] * k[1] + m[3] * k[3]) % p};
    return idx.at(r);
  });
}

/// Cycle (0 1 ... n-1) and a transposition (or 3-cycles for the alternating group).
inline FiniteGroup symmetric_group(std::size_t n, GroupOptions opts = {}) {
  if (n < 1) throw invalid_input("symmetric group degree must be positive");
  if (n == 1) return FiniteGroup();
  Perm cyc(n), tr(n);
  for (std::size_t i = 0; i < n; ++i) {
    cyc[i] = static_cast<std::uint32_t>((i + 1) % n);
    tr[i] = static_cast<std::uint32_t>(i);
  }
  std::swap(tr[0], tr[1]);
  return permutation_closure({cyc, tr}, n, opts).group;
}

inline FiniteGroup alternating_group(std::size_t n, GroupOptions opts = {}) {
  if (n < 3) return FiniteGroup();
  std::vector<Perm> gens;
  for (std::size_t k = 2; k < n; ++k) {
    Perm g(n);
    std::iota(g.begin(), g.end(), 0u);
    g[0] = 1;
    g[1] = static_cast<std::uint32_t>(k);
    g[k] = 0;
    gens.push_back(g);
  }
  return permutation_closure(gens, n, opts).group;
}

/// N x| H with (n1, h1)(n2, h2) = (n1 action[h1](n2), h1 h2); the pair
/// (n, h) is stored at n + |N| h. action[h] is the image table of h.
inline FiniteGroup semidirect_product(const FiniteGroup& N, const FiniteGroup& H,
                                      const std::vector<std::vector<Elem>>& action, GroupOptions opts = {}) {
  const std::size_t nn = N.order(), nh = H.order();
  if (action.size() != nh) throw invalid_input("action must give one automorphism per element of H");
  for (std::size_t h = 0; h < nh; ++h) {
    const auto& a = action[h];
    if (a.size() != nn) throw invalid_input("automorphism table has wrong length");
    std::vector<char> seen(nn, 0);
    for (Elem x : a) {
      if (x >= nn || seen[x]) throw invalid_input("action image is not a bijection");
      seen[x] = 1;
    }
    for (Elem x = 0; x < nn; ++x)
      for (Elem y = 0; y < nn; ++y)
        if (a[N.mul(x, y)] != N.mul(a[x], a[y])) throw invalid_input("action image is not a homomorphism");
  }
  for (Elem x = 0; x < nn; ++x)
    if (action[0][x] != x) throw invalid_input("identity of H must act trivially");
  for (Elem h1 = 0; h1 < nh; ++h1)
    for (Elem h2 = 0; h2 < nh; ++h2)
      for (Elem x = 0; x < nn; ++x)
        if (action[H.mul(h1, h2)][x] != action[h1][action[h2][x]]) throw invalid_input("action is not a homomorphism");
  detail::check_order(nn * nh, opts);
  return detail::table_group(nn * nh, [&](std::size_t a, std::size_t b) {
    const Elem n1 = static_cast<Elem>(a % nn), h1 = static_cast<Elem>(a / nn);
    const Elem n2 = static_cast<Elem>(b % nn), h2 = static_cast<Elem>(b / nn);
    return std::size_t(N.mul(n1, action[h1][n2])) + nn * H.mul(h1, h2);
  });
}

/// (A x B) / {(z, phi(z)^-1)} for central subgroups za of A, zb of B and an
/// isomorphism phi: za -> zb given as a map on za's elements.
inline FiniteGroup central_product(const FiniteGroup& A, const FiniteGroup& B, const Subgroup& za,
                                   const std::vector<Elem>& phi, GroupOptions opts = {}) {
  Subgroup zA = center(A), zB = center(B);
  if (!za.subset_of(zA)) throw invalid_input("identified subgroup of the first factor is not central");
  if (phi.size() != A.order()) throw invalid_input("identification map must be indexed by elements of the first factor");
  std::vector<Elem> image;
  for (Elem z : za.elements()) {
    const Elem w = phi[z];
    if (w >= B.order() || !zB.contains(w)) throw invalid_input("identification does not land in the center of the second factor");
    image.push_back(w);
  }
  for (Elem x : za.elements())
    for (Elem y : za.elements())
      if (phi[A.mul(x, y)] != B.mul(phi[x], phi[y])) throw invalid_input("identification is not a homomorphism");
  std::sort(image.begin(), image.end());
  if (std::adjacent_find(image.begin(), image.end()) != image.end()) throw invalid_input("identification is not injective");
  FiniteGroup prod = direct_product({A, B}, GroupOptions{opts.max_order * za.order()});
  std::vector<Elem> kernel;
  for (Elem z : za.elements()) kernel.push_back(static_cast<Elem>(z + A.order() * B.inv(phi[z])));
  Subgroup K = Subgroup::from_closed(prod, kernel);
  detail::check_order(prod.order() / K.order(), opts);
  return quotient(prod, K).target;
}

/// Central product identifying the smaller center with a subgroup of the
/// larger one (first embedding in search order).
inline FiniteGroup central_product_of_centers(const FiniteGroup& A, const FiniteGroup& B, GroupOptions opts = {}) {
  Subgroup zA = center(A), zB = center(B);
  const bool swap = zA.order() > zB.order();
  const FiniteGroup& X = swap ? B : A;
  const FiniteGroup& Y = swap ? A : B;
  const Subgroup& zX = swap ? zB : zA;
  const Subgroup& zY = swap ? zA : zB;
  auto ex = as_group(X, zX), ey = as_group(Y, zY);
  auto emb = find_embedding(ex.group, ey.group);
  if (!emb) throw invalid_input("centers cannot be identified");
  std::vector<Elem> phi(X.order(), 0);
  for (Elem i = 0; i < ex.group.order(); ++i) phi[ex.embed[i]] = ey.embed[(*emb)[i]];
  return central_product(X, Y, zX, phi, opts);
}

/// Composition power of an automorphism table.
inline std::vector<Elem> automorphism_power(const std::vector<Elem>& a, std::size_t k) {
  std::vector<Elem> r(a.size());
  std::iota(r.begin(), r.end(), 0u);
  for (std::size_t i = 0; i < k; ++i)
    for (auto& x : r) x = a[x];
  return r;
}

/// N x| C_k where a generator of C_k acts by the first automorphism (in
/// search order) of order exactly k inducing a fixed-point-free map on
/// N / Phi(N). N must be a p-group.
inline FiniteGroup fpf_extension(const FiniteGroup& N, std::size_t k, GroupOptions opts = {}) {
  auto primes = prime_divisors(N.order());
  if (primes.size() != 1) throw unsupported_input("fixed-point-free extension needs a nontrivial p-group");
  const std::uint32_t p = primes[0];
  if (k < 2) throw invalid_input("extension degree must be at least 2");
  detail::check_order(N.order() * k, opts);
  Subgroup phi = frattini_of_p_group(N, whole_group(N), p);
  std::optional<std::vector<Elem>> alpha;
  for_each_automorphism(N, [&](const std::vector<Elem>& a) {
    std::vector<Elem> cur = a;
    std::size_t ord = 1;
    while (true) {
      bool id = true;
      for (Elem x = 0; x < N.order(); ++x)
        if (cur[x] != x) {
          id = false;
          break;
        }
      if (id || ord > k) break;
      for (auto& x : cur) x = a[x];
      ++ord;
    }
    if (ord != k) return false;
    for (Elem x = 0; x < N.order(); ++x) {
      if (phi.contains(x)) continue;
      if (phi.contains(N.mul(a[x], N.inv(x)))) return false;
    }
    alpha = a;
    return true;
  });
  if (!alpha) throw unsupported_input("no automorphism of order " + std::to_string(k) + " acting fixed-point-freely");
  std::vector<std::vector<Elem>> action;
  for (std::size_t j = 0; j < k; ++j) action.push_back(automorphism_power(*alpha, j));
  return semidirect_product(N, cyclic_group(k), action, opts);
}

/// (F_q x F_q) x| F_q^* with (v, w)(v', w') = (v + v', w + w' + v v'^(p^e)),
/// lambda acting by (v, w) -> (lambda v, lambda^(1 + p^e) w). G' is special
/// of class two for suitable (q, e).
inline FiniteGroup classtwo_group(std::uint64_t q, std::uint32_t e, GroupOptions opts = {}) {
  GaloisField f = GaloisField::of_order(q);
  const std::size_t Q = f.order();
  detail::check_order(Q * Q * (Q - 1), opts);
  std::uint64_t pe = 1;
  for (std::uint32_t i = 0; i < e; ++i) pe *= f.p();
  auto beta = [&](std::uint32_t v, std::uint32_t v2) { return f.mul(v, f.pow(v2, pe)); };
  // Element (v, w, lambda) stored at v + Q w + Q^2 (lambda - 1).
  return detail::table_group(Q * Q * (Q - 1), [&](std::size_t x, std::size_t y) {
    const auto v1 = static_cast<std::uint32_t>(x % Q), w1 = static_cast<std::uint32_t>(x / Q % Q);
    const auto l1 = static_cast<std::uint32_t>(x / (Q * Q) + 1);
    auto v2 = static_cast<std::uint32_t>(y % Q), w2 = static_cast<std::uint32_t>(y / Q % Q);
    const auto l2 = static_cast<std::uint32_t>(y / (Q * Q) + 1);
    // Act with l1 on (v2, w2), then multiply in the normal subgroup.
    v2 = f.mul(l1, v2);
    w2 = f.mul(f.pow(l1, 1 + pe), w2);
    const std::uint32_t v = f.add(v1, v2);
    const std::uint32_t w = f.add(f.add(w1, w2), beta(v1, v2));
    return std::size_t(v) + Q * w + Q * Q * (f.mul(l1, l2) - 1);
  });
}

}  // namespace soclelab
