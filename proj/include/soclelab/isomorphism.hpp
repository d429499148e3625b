#pragma once

// Homomorphism extension, isomorphism and embedding search by backtracking
// over generator images, plus a cheap invariant fingerprint.

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "soclelab/group.hpp"

namespace soclelab {

inline constexpr std::size_t kIsomorphismSearchLimit = 512;

/// Extends gens[i] -> images[i] to a homomorphism on <gens>. Returns the
/// image table indexed by elements of a, with b.order() marking elements
/// outside <gens>, or nullopt if the assignment is inconsistent.
inline std::optional<std::vector<Elem>> extend_homomorphism(const FiniteGroup& a, std::span<const Elem> gens,
                                                            std::span<const Elem> images, const FiniteGroup& b) {
  const Elem unset = static_cast<Elem>(b.order());
  std::vector<Elem> map(a.order(), unset);
  map[0] = 0;
  std::vector<Elem> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Elem x = queue[i];
    for (std::size_t s = 0; s < gens.size(); ++s) {
      const Elem y = a.mul(x, gens[s]);
      const Elem fy = b.mul(map[x], images[s]);
      if (map[y] == unset) {
        map[y] = fy;
        queue.push_back(y);
      } else if (map[y] != fy) {
        return std::nullopt;
      }
    }
  }
  // f(xs) = f(x) f(s) for every x and generator s gives f(xy) = f(x) f(y)
  // by induction on the length of y.
  return map;
}

struct Fingerprint {
  std::size_t order = 0;
  std::vector<std::pair<std::size_t, std::size_t>> order_class_size;  // sorted (element order, class size)
  std::vector<std::size_t> derived_series;
  std::size_t center_order = 0;
  bool operator==(const Fingerprint&) const = default;
};

inline Fingerprint fingerprint(const FiniteGroup& g) {
  Fingerprint f;
  f.order = g.order();
  ClassData cd = conjugacy_class_data(g);
  for (Elem x = 0; x < g.order(); ++x)
    f.order_class_size.emplace_back(g.element_order(x), cd.classes[cd.class_of[x]].size());
  std::sort(f.order_class_size.begin(), f.order_class_size.end());
  f.center_order = center(g).order();
  FiniteGroup cur = g;
  for (;;) {
    f.derived_series.push_back(cur.order());
    Subgroup d = derived_subgroup(cur);
    if (d.order() == cur.order() || d.order() == 1) {
      if (d.order() == 1 && cur.order() != 1) f.derived_series.push_back(1);
      break;
    }
    cur = as_group(cur, d).group;
  }
  return f;
}

namespace detail {

// Candidate images for a generator: same element order (and, for
// isomorphisms, same class size).
struct MapSearch {
  const FiniteGroup& a;
  const FiniteGroup& b;
  std::vector<Elem> gens;
  std::vector<std::vector<Elem>> candidates;
  std::vector<Elem> chosen;

  std::optional<std::vector<Elem>> run(std::size_t depth) {
    if (depth == gens.size()) {
      auto map = extend_homomorphism(a, gens, chosen, b);
      if (!map) return std::nullopt;
      std::vector<char> hit(b.order(), 0);
      for (Elem x = 0; x < a.order(); ++x) {
        if (hit[(*map)[x]]) return std::nullopt;
        hit[(*map)[x]] = 1;
      }
      return map;
    }
    for (Elem c : candidates[depth]) {
      chosen.push_back(c);
      // Prune: partial assignment must already extend consistently.
      bool ok = true;
      if (depth + 1 < gens.size()) {
        auto partial = extend_homomorphism(a, std::span<const Elem>(gens.data(), depth + 1), chosen, b);
        ok = partial.has_value();
        if (ok) {
          // Injectivity on the partial subgroup.
          std::vector<char> hit(b.order(), 0);
          for (Elem x = 0; x < a.order() && ok; ++x) {
            Elem y = (*partial)[x];
            if (y == b.order()) continue;
            if (hit[y]) ok = false;
            hit[y] = 1;
          }
        }
      }
      if (ok) {
        if (auto r = run(depth + 1)) return r;
      }
      chosen.pop_back();
    }
    return std::nullopt;
  }
};

}  // namespace detail

/// First isomorphism a -> b in the generator-image search order, or nullopt.
/// Only meant for orders up to kIsomorphismSearchLimit.
inline std::optional<std::vector<Elem>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order()) return std::nullopt;
  if (a.order() > kIsomorphismSearchLimit) throw unsupported_input("isomorphism search above order 512");
  if (fingerprint(a) != fingerprint(b)) return std::nullopt;
  ClassData ca = conjugacy_class_data(a), cb = conjugacy_class_data(b);
  detail::MapSearch s{a, b, a.generators(), {}, {}};
  for (Elem x : s.gens) {
    std::vector<Elem> cand;
    for (Elem y = 0; y < b.order(); ++y)
      if (b.element_order(y) == a.element_order(x) &&
          cb.classes[cb.class_of[y]].size() == ca.classes[ca.class_of[x]].size())
        cand.push_back(y);
    s.candidates.push_back(std::move(cand));
  }
  return s.run(0);
}

/// First injective homomorphism a -> b, or nullopt.
inline std::optional<std::vector<Elem>> find_embedding(const FiniteGroup& a, const FiniteGroup& b) {
  if (b.order() % a.order() != 0) return std::nullopt;
  const std::vector<Elem>& gens = a.generators();
  std::vector<std::vector<Elem>> candidates;
  for (Elem x : gens) {
    std::vector<Elem> cand;
    for (Elem y = 0; y < b.order(); ++y)
      if (b.element_order(y) == a.element_order(x)) cand.push_back(y);
    candidates.push_back(std::move(cand));
  }
  std::optional<std::vector<Elem>> found;
  std::vector<Elem> chosen;
  std::function<bool(std::size_t)> rec = [&](std::size_t depth) -> bool {
    auto partial = extend_homomorphism(a, std::span<const Elem>(gens.data(), depth), chosen, b);
    if (!partial) return false;
    std::vector<char> hit(b.order(), 0);
    for (Elem x = 0; x < a.order(); ++x) {
      Elem y = (*partial)[x];
      if (y == b.order()) continue;
      if (hit[y]) return false;
      hit[y] = 1;
    }
    if (depth == gens.size()) {
      found = std::move(partial);
      return true;
    }
    for (Elem c : candidates[depth]) {
      chosen.push_back(c);
      if (rec(depth + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  rec(0);
  return found;
}

struct IsomorphismVerdict {
  bool isomorphic = false;
  bool by_fingerprint = false;  // true when the order was above the search limit
};

inline IsomorphismVerdict isomorphism_verdict(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order()) return {false, false};
  if (a.order() > kIsomorphismSearchLimit) return {fingerprint(a) == fingerprint(b), true};
  return {find_isomorphism(a, b).has_value(), false};
}

/// Calls visit(map) for each automorphism in search order until it returns true.
inline void for_each_automorphism(const FiniteGroup& g, const std::function<bool(const std::vector<Elem>&)>& visit) {
  const auto& gens = g.generators();
  std::vector<std::vector<Elem>> candidates;
  for (Elem x : gens) {
    std::vector<Elem> cand;
    for (Elem y = 0; y < g.order(); ++y)
      if (g.element_order(y) == g.element_order(x)) cand.push_back(y);
    candidates.push_back(std::move(cand));
  }
  std::vector<Elem> chosen;
  std::function<bool(std::size_t)> rec = [&](std::size_t depth) -> bool {
    auto partial = extend_homomorphism(g, std::span<const Elem>(gens.data(), depth), chosen, g);
    if (!partial) return false;
    std::vector<char> hit(g.order(), 0);
    for (Elem x = 0; x < g.order(); ++x) {
      Elem y = (*partial)[x];
      if (y == g.order()) continue;
      if (hit[y]) return false;
      hit[y] = 1;
    }
    if (depth == gens.size()) return visit(*partial);
    for (Elem c : candidates[depth]) {
      chosen.push_back(c);
      if (rec(depth + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  rec(0);
}

}  // namespace soclelab
