#pragma once

// Finite groups given by multiplication tables, with the subgroup, quotient
// and conjugacy toolkit used throughout the library.
//
// Conventions: the identity is element 0; [a, b] = a b a^-1 b^-1; conjugation
// of x by g is g x g^-1. Every choice among equivalent candidates (class
// representatives, coset sections, searched elements) takes the smallest index.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "soclelab/errors.hpp"

namespace soclelab {

using Elem = std::uint32_t;

inline constexpr std::size_t kDefaultMaxOrder = 2000;
inline constexpr std::size_t kFullAssociativityCheck = 512;

struct GroupOptions {
  std::size_t max_order = kDefaultMaxOrder;
};

class FiniteGroup {
 public:
  /// The trivial group.
  FiniteGroup() : FiniteGroup(1, std::vector<Elem>{0}, {}) {}

  /// Validates the group axioms on an n x n table (associativity exhaustively
  /// up to order 512, on a fixed pseudo-random sample above) and relabels the
  /// identity to index 0 by swapping it with the element at index 0.
  static FiniteGroup from_table(const std::vector<std::vector<Elem>>& table, GroupOptions opts = {},
                                std::vector<std::string> labels = {}) {
    const std::size_t n = table.size();
    if (n == 0) throw invalid_input("empty Cayley table");
    if (n > opts.max_order)
      throw unsupported_input("group order " + std::to_string(n) + " exceeds the order cap " +
                              std::to_string(opts.max_order));
    std::vector<Elem> flat(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      if (table[a].size() != n) throw invalid_input("Cayley table row " + std::to_string(a) + " has wrong length");
      for (std::size_t b = 0; b < n; ++b) {
        if (table[a][b] >= n) throw invalid_input("Cayley table entry out of range at row " + std::to_string(a));
        flat[a * n + b] = table[a][b];
      }
    }
    // Latin square.
    std::vector<char> seen(n);
    for (std::size_t a = 0; a < n; ++a) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t b = 0; b < n; ++b) {
        if (seen[flat[a * n + b]]++) throw invalid_input("Cayley table row " + std::to_string(a) + " is not a permutation");
      }
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t b = 0; b < n; ++b) {
        if (seen[flat[b * n + a]]++) throw invalid_input("Cayley table column " + std::to_string(a) + " is not a permutation");
      }
    }
    std::optional<Elem> e;
    for (std::size_t a = 0; a < n && !e; ++a) {
      bool ok = true;
      for (std::size_t b = 0; b < n && ok; ++b) ok = flat[a * n + b] == b && flat[b * n + a] == b;
      if (ok) e = static_cast<Elem>(a);
    }
    if (!e) throw invalid_input("Cayley table has no identity element");
    auto assoc = [&](std::size_t a, std::size_t b, std::size_t c) {
      return flat[flat[a * n + b] * n + c] == flat[a * n + flat[b * n + c]];
    };
    if (n <= kFullAssociativityCheck) {
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          for (std::size_t c = 0; c < n; ++c)
            if (!assoc(a, b, c)) throw invalid_input("Cayley table is not associative");
    } else {
      std::mt19937_64 rng(0x5eed);
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      for (int i = 0; i < 200000; ++i)
        if (!assoc(pick(rng), pick(rng), pick(rng))) throw invalid_input("Cayley table is not associative");
    }
    if (*e != 0) {
      // Swap labels e <-> 0.
      auto sw = [&](Elem x) -> Elem { return x == *e ? 0 : (x == 0 ? *e : x); };
      std::vector<Elem> relabeled(n * n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) relabeled[sw(a) * n + sw(b)] = sw(flat[a * n + b]);
      flat = std::move(relabeled);
      if (!labels.empty()) std::swap(labels[0], labels[*e]);
    }
    return FiniteGroup(n, std::move(flat), std::move(labels));
  }

  /// For tables that are groups by construction with identity at index 0.
  static FiniteGroup trusted(std::size_t n, std::vector<Elem> flat, std::vector<std::string> labels = {}) {
    return FiniteGroup(n, std::move(flat), std::move(labels));
  }

  std::size_t order() const { return d_->n; }
  Elem mul(Elem a, Elem b) const { return d_->mul[std::size_t(a) * d_->n + b]; }
  Elem inv(Elem a) const { return d_->inv[a]; }
  Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inv(g)); }
  Elem commutator(Elem a, Elem b) const { return mul(mul(a, b), mul(inv(a), inv(b))); }
  Elem pow(Elem x, std::int64_t k) const {
    if (k < 0) {
      x = inv(x);
      k = -k;
    }
    Elem r = 0, b = x;
    while (k) {
      if (k & 1) r = mul(r, b);
      b = mul(b, b);
      k >>= 1;
    }
    return r;
  }
  std::size_t element_order(Elem x) const { return d_->orders[x]; }

  /// A small generating set, chosen greedily among elements of largest order.
  const std::vector<Elem>& generators() const { return d_->gens; }
  bool is_abelian() const { return d_->abelian; }

  const std::vector<Elem>& table() const { return d_->mul; }
  const std::vector<std::string>& labels() const { return d_->labels; }
  std::string label(Elem x) const { return d_->labels.empty() ? std::to_string(x) : d_->labels[x]; }

  std::vector<std::vector<Elem>> table_rows() const {
    std::vector<std::vector<Elem>> rows(order(), std::vector<Elem>(order()));
    for (std::size_t a = 0; a < order(); ++a)
      for (std::size_t b = 0; b < order(); ++b) rows[a][b] = mul(a, b);
    return rows;
  }

  bool operator==(const FiniteGroup& o) const { return d_ == o.d_ || d_->mul == o.d_->mul; }

 private:
  struct Data {
    std::size_t n;
    std::vector<Elem> mul;
    std::vector<Elem> inv;
    std::vector<std::size_t> orders;
    std::vector<Elem> gens;
    std::vector<std::string> labels;
    bool abelian;
  };

  FiniteGroup(std::size_t n, std::vector<Elem> flat, std::vector<std::string> labels) {
    auto d = std::make_shared<Data>();
    d->n = n;
    d->mul = std::move(flat);
    d->labels = std::move(labels);
    if (!d->labels.empty() && d->labels.size() != n) throw invalid_input("label count does not match order");
    d->inv.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (d->mul[a * n + b] == 0) {
          d->inv[a] = static_cast<Elem>(b);
          break;
        }
    d->orders.assign(n, 1);
    for (std::size_t a = 1; a < n; ++a) {
      Elem x = static_cast<Elem>(a);
      std::size_t k = 1;
      while (x != 0) {
        x = d->mul[x * n + a];
        ++k;
      }
      d->orders[a] = k;
    }
    d->abelian = true;
    for (std::size_t a = 0; a < n && d->abelian; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (d->mul[a * n + b] != d->mul[b * n + a]) {
          d->abelian = false;
          break;
        }
    // Greedy generators: largest order first, ties by index.
    std::vector<Elem> byorder(n);
    std::iota(byorder.begin(), byorder.end(), 0);
    std::stable_sort(byorder.begin(), byorder.end(),
                     [&](Elem a, Elem b) { return d->orders[a] > d->orders[b]; });
    std::vector<char> in(n, 0);
    in[0] = 1;
    std::size_t count = 1;
    for (Elem x : byorder) {
      if (count == n) break;
      if (in[x]) continue;
      d->gens.push_back(x);
      // Re-close under right multiplication by all generators so far.
      std::vector<Elem> queue;
      for (std::size_t y = 0; y < n; ++y)
        if (in[y]) queue.push_back(static_cast<Elem>(y));
      for (std::size_t i = 0; i < queue.size(); ++i)
        for (Elem s : d->gens) {
          Elem z = d->mul[std::size_t(queue[i]) * n + s];
          if (!in[z]) {
            in[z] = 1;
            ++count;
            queue.push_back(z);
          }
        }
    }
    d_ = std::move(d);
  }

  std::shared_ptr<const Data> d_;
};

class Subgroup {
 public:
  Subgroup() = default;

  const std::vector<Elem>& elements() const { return elems_; }
  std::size_t order() const { return elems_.size(); }
  bool contains(Elem x) const { return x < member_.size() && member_[x]; }
  bool is_normal() const { return normal_; }
  std::size_t parent_order() const { return member_.size(); }
  bool is_trivial() const { return elems_.size() == 1; }

  bool operator==(const Subgroup& o) const { return elems_ == o.elems_ && member_.size() == o.member_.size(); }
  bool subset_of(const Subgroup& o) const {
    return std::all_of(elems_.begin(), elems_.end(), [&](Elem x) { return o.contains(x); });
  }

  /// Wraps an element set that is known to be a subgroup.
  static Subgroup from_closed(const FiniteGroup& g, std::vector<Elem> elems) {
    Subgroup s;
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    s.member_.assign(g.order(), 0);
    for (Elem x : elems) s.member_[x] = 1;
    s.elems_ = std::move(elems);
    s.normal_ = true;
    for (Elem t : g.generators()) {
      for (Elem x : s.elems_)
        if (!s.member_[g.conj(t, x)]) {
          s.normal_ = false;
          break;
        }
      if (!s.normal_) break;
    }
    return s;
  }

  /// Checks closure before wrapping.
  static Subgroup checked(const FiniteGroup& g, std::vector<Elem> elems) {
    std::vector<char> in(g.order(), 0);
    for (Elem x : elems) {
      if (x >= g.order()) throw invalid_input("subgroup element out of range");
      in[x] = 1;
    }
    if (!in[0]) throw invalid_input("subgroup must contain the identity");
    for (Elem a : elems)
      for (Elem b : elems)
        if (!in[g.mul(a, b)]) throw invalid_input("element set is not closed under multiplication");
    return from_closed(g, std::move(elems));
  }

 private:
  std::vector<Elem> elems_;
  std::vector<char> member_;
  bool normal_ = false;
};

struct ConjClass {
  Elem representative = 0;
  std::vector<Elem> elements;
  std::size_t size() const { return elements.size(); }
};

struct ClassData {
  std::vector<ConjClass> classes;        // sorted by (size, representative)
  std::vector<std::uint32_t> class_of;   // element -> class index
};

// ---------------------------------------------------------------------------
// Subgroup construction.

inline Subgroup trivial_subgroup(const FiniteGroup& g) { return Subgroup::from_closed(g, {0}); }

inline Subgroup whole_group(const FiniteGroup& g) {
  std::vector<Elem> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup::from_closed(g, std::move(all));
}

namespace detail {

inline void close_under(const FiniteGroup& g, std::vector<char>& in, std::vector<Elem>& elems,
                        const std::vector<Elem>& gens) {
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (Elem s : gens) {
      Elem z = g.mul(elems[i], s);
      if (!in[z]) {
        in[z] = 1;
        elems.push_back(z);
      }
    }
}

}  // namespace detail

/// Subgroup generated by an arbitrary element list.
inline Subgroup generated_subgroup(const FiniteGroup& g, std::span<const Elem> gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<Elem> elems{0};
  in[0] = 1;
  std::vector<Elem> kept;
  for (Elem x : gens) {
    if (in[x]) continue;
    kept.push_back(x);
    // Restart closure from everything found so far with the enlarged set.
    detail::close_under(g, in, elems, kept);
    // Elements reached earlier must also be multiplied by the new generator.
    for (std::size_t i = 0; i < elems.size(); ++i) {
      Elem z = g.mul(elems[i], x);
      if (!in[z]) {
        in[z] = 1;
        elems.push_back(z);
        detail::close_under(g, in, elems, kept);
      }
    }
  }
  return Subgroup::from_closed(g, std::move(elems));
}

inline Subgroup generated_subgroup(const FiniteGroup& g, std::initializer_list<Elem> gens) {
  return generated_subgroup(g, std::span<const Elem>(gens.begin(), gens.size()));
}

/// Smallest generating set found greedily (largest element order first).
inline std::vector<Elem> subgroup_generators(const FiniteGroup& g, const Subgroup& s) {
  std::vector<Elem> byorder = s.elements();
  std::stable_sort(byorder.begin(), byorder.end(),
                   [&](Elem a, Elem b) { return g.element_order(a) > g.element_order(b); });
  std::vector<char> in(g.order(), 0);
  in[0] = 1;
  std::vector<Elem> elems{0}, gens;
  for (Elem x : byorder) {
    if (elems.size() == s.order()) break;
    if (in[x]) continue;
    gens.push_back(x);
    std::vector<Elem> restart = elems;
    detail::close_under(g, in, elems, gens);
    for (std::size_t i = 0; i < elems.size(); ++i) {
      Elem z = g.mul(elems[i], x);
      if (!in[z]) {
        in[z] = 1;
        elems.push_back(z);
        detail::close_under(g, in, elems, gens);
      }
    }
  }
  return gens;
}

/// Smallest normal subgroup containing the given elements.
inline Subgroup normal_closure(const FiniteGroup& g, std::span<const Elem> xs) {
  std::vector<Elem> gens(xs.begin(), xs.end());
  Subgroup s = generated_subgroup(g, gens);
  for (;;) {
    std::vector<Elem> extra;
    for (Elem t : g.generators())
      for (Elem x : subgroup_generators(g, s)) {
        Elem y = g.conj(t, x);
        if (!s.contains(y)) extra.push_back(y);
      }
    if (extra.empty()) return s;
    auto cur = subgroup_generators(g, s);
    cur.insert(cur.end(), extra.begin(), extra.end());
    s = generated_subgroup(g, cur);
  }
}

inline Subgroup normal_closure(const FiniteGroup& g, const Subgroup& s) { return normal_closure(g, s.elements()); }

/// Product set A B of two subgroups (a subgroup when one normalizes the other).
inline Subgroup product_subgroup(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
  std::vector<Elem> gens = subgroup_generators(g, a);
  auto gb = subgroup_generators(g, b);
  gens.insert(gens.end(), gb.begin(), gb.end());
  return generated_subgroup(g, gens);
}

inline Subgroup intersection(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
  std::vector<Elem> out;
  for (Elem x : a.elements())
    if (b.contains(x)) out.push_back(x);
  return Subgroup::from_closed(g, std::move(out));
}

// ---------------------------------------------------------------------------
// Standard subgroups.

/// {t in within : t s = s t for all s in set}.
inline Subgroup centralizer(const FiniteGroup& g, std::span<const Elem> set, const Subgroup& within) {
  std::vector<Elem> out;
  for (Elem t : within.elements()) {
    bool ok = true;
    for (Elem s : set)
      if (g.mul(t, s) != g.mul(s, t)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(t);
  }
  return Subgroup::from_closed(g, std::move(out));
}

inline Subgroup centralizer(const FiniteGroup& g, const Subgroup& s, const Subgroup& within) {
  return centralizer(g, subgroup_generators(g, s), within);
}

inline Subgroup center(const FiniteGroup& g) { return centralizer(g, g.generators(), whole_group(g)); }

inline Subgroup normalizer(const FiniteGroup& g, const Subgroup& s) {
  auto gens = subgroup_generators(g, s);
  std::vector<Elem> out;
  for (Elem t = 0; t < g.order(); ++t) {
    bool ok = true;
    for (Elem x : gens)
      if (!s.contains(g.conj(t, x))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(t);
  }
  return Subgroup::from_closed(g, std::move(out));
}

/// Normal closure of the commutators of a generating set, i.e. G'.
inline Subgroup derived_subgroup(const FiniteGroup& g) {
  std::vector<Elem> comms;
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Elem c = g.commutator(gens[i], gens[j]);
      if (c != 0) comms.push_back(c);
    }
  return normal_closure(g, comms);
}

// ---------------------------------------------------------------------------
// Subgroups as standalone groups.

struct EmbeddedGroup {
  FiniteGroup group;
  std::vector<Elem> embed;         // index in group -> element of parent
  std::vector<std::int64_t> local; // parent element -> index in group, -1 outside
};

/// The subgroup as a group of its own; element i corresponds to the i-th
/// smallest parent element, so the identity stays at index 0.
inline EmbeddedGroup as_group(const FiniteGroup& g, const Subgroup& s) {
  const std::size_t m = s.order();
  EmbeddedGroup out;
  out.embed = s.elements();
  out.local.assign(g.order(), -1);
  for (std::size_t i = 0; i < m; ++i) out.local[out.embed[i]] = static_cast<std::int64_t>(i);
  std::vector<Elem> flat(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      auto z = out.local[g.mul(out.embed[a], out.embed[b])];
      if (z < 0) throw invalid_input("element set is not a subgroup");
      flat[a * m + b] = static_cast<Elem>(z);
    }
  std::vector<std::string> labels;
  if (!g.labels().empty())
    for (Elem x : out.embed) labels.push_back(g.label(x));
  out.group = FiniteGroup::trusted(m, std::move(flat), std::move(labels));
  return out;
}

/// Image of a subgroup of e.group in the parent.
inline Subgroup lift(const FiniteGroup& parent, const EmbeddedGroup& e, const Subgroup& s) {
  std::vector<Elem> out;
  for (Elem x : s.elements()) out.push_back(e.embed[x]);
  return Subgroup::from_closed(parent, std::move(out));
}

/// Subgroup of e.group corresponding to a parent subgroup contained in it.
inline Subgroup restrict_to(const EmbeddedGroup& e, const Subgroup& s) {
  std::vector<Elem> out;
  for (Elem x : s.elements()) {
    if (e.local[x] < 0) throw invalid_input("subgroup not contained in the embedded group");
    out.push_back(static_cast<Elem>(e.local[x]));
  }
  return Subgroup::from_closed(e.group, std::move(out));
}

/// Derived subgroup of a subgroup, computed inside it.
inline Subgroup derived_of(const FiniteGroup& g, const Subgroup& s) {
  auto e = as_group(g, s);
  return lift(g, e, derived_subgroup(e.group));
}

inline Subgroup center_of(const FiniteGroup& g, const Subgroup& s) {
  auto e = as_group(g, s);
  return lift(g, e, center(e.group));
}

// ---------------------------------------------------------------------------
// Conjugacy.

inline ClassData conjugacy_class_data(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<std::int64_t> raw(n, -1);
  std::vector<std::vector<Elem>> orbits;
  for (Elem x = 0; x < n; ++x) {
    if (raw[x] >= 0) continue;
    const auto id = static_cast<std::int64_t>(orbits.size());
    std::vector<Elem> orbit{x};
    raw[x] = id;
    for (std::size_t i = 0; i < orbit.size(); ++i)
      for (Elem t : g.generators()) {
        Elem y = g.conj(t, orbit[i]);
        if (raw[y] < 0) {
          raw[y] = id;
          orbit.push_back(y);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  std::vector<std::size_t> idx(orbits.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (orbits[a].size() != orbits[b].size()) return orbits[a].size() < orbits[b].size();
    return orbits[a][0] < orbits[b][0];
  });
  ClassData cd;
  cd.class_of.assign(n, 0);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    ConjClass c;
    c.elements = std::move(orbits[idx[k]]);
    c.representative = c.elements.front();
    for (Elem x : c.elements) cd.class_of[x] = static_cast<std::uint32_t>(k);
    cd.classes.push_back(std::move(c));
  }
  return cd;
}

inline std::vector<ConjClass> conjugacy_classes(const FiniteGroup& g) { return conjugacy_class_data(g).classes; }

inline std::vector<Elem> conjugacy_class_of(const FiniteGroup& g, Elem x) {
  std::vector<char> in(g.order(), 0);
  std::vector<Elem> orbit{x};
  in[x] = 1;
  for (std::size_t i = 0; i < orbit.size(); ++i)
    for (Elem t : g.generators()) {
      Elem y = g.conj(t, orbit[i]);
      if (!in[y]) {
        in[y] = 1;
        orbit.push_back(y);
      }
    }
  std::sort(orbit.begin(), orbit.end());
  return orbit;
}

inline bool are_conjugate(const FiniteGroup& g, Elem a, Elem b) {
  auto c = conjugacy_class_of(g, a);
  return std::binary_search(c.begin(), c.end(), b);
}

// ---------------------------------------------------------------------------
// Quotients.

struct QuotientMap {
  FiniteGroup source;
  Subgroup kernel;
  FiniteGroup target;
  std::vector<Elem> proj;     // source element -> target element
  std::vector<Elem> section;  // target element -> smallest coset member

  Subgroup image(const Subgroup& s) const {
    std::vector<Elem> out;
    for (Elem x : s.elements()) out.push_back(proj[x]);
    return Subgroup::from_closed(target, std::move(out));
  }
  Subgroup preimage(const Subgroup& s) const {
    std::vector<Elem> out;
    for (Elem x = 0; x < source.order(); ++x)
      if (s.contains(proj[x])) out.push_back(x);
    return Subgroup::from_closed(source, std::move(out));
  }
};

inline QuotientMap quotient(const FiniteGroup& g, const Subgroup& n) {
  if (n.parent_order() != g.order()) throw invalid_input("subgroup belongs to a different group");
  if (!n.is_normal()) throw invalid_input("quotient by a non-normal subgroup");
  QuotientMap q;
  q.source = g;
  q.kernel = n;
  const std::size_t size = g.order();
  std::vector<std::int64_t> coset(size, -1);
  for (Elem x = 0; x < size; ++x) {
    if (coset[x] >= 0) continue;
    const auto id = static_cast<std::int64_t>(q.section.size());
    q.section.push_back(x);
    for (Elem k : n.elements()) coset[g.mul(x, k)] = id;
  }
  q.proj.resize(size);
  for (Elem x = 0; x < size; ++x) q.proj[x] = static_cast<Elem>(coset[x]);
  const std::size_t m = q.section.size();
  std::vector<Elem> flat(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) flat[a * m + b] = q.proj[g.mul(q.section[a], q.section[b])];
  q.target = FiniteGroup::trusted(m, std::move(flat));
  return q;
}

// ---------------------------------------------------------------------------
// Arithmetic of element orders and p-local structure.

inline std::size_t p_part(std::size_t n, std::uint32_t p) {
  std::size_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

inline bool is_p_power(std::size_t n, std::uint32_t p) { return p_part(n, p) == n; }

inline std::vector<std::uint32_t> prime_divisors(std::size_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 2; std::size_t(d) * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(static_cast<std::uint32_t>(n));
  return out;
}

inline bool is_p_element(const FiniteGroup& g, Elem x, std::uint32_t p) { return is_p_power(g.element_order(x), p); }
inline bool is_p_prime_element(const FiniteGroup& g, Elem x, std::uint32_t p) { return g.element_order(x) % p != 0; }

/// (x_p, x_p') with x = x_p x_p', both powers of x.
inline std::pair<Elem, Elem> element_parts(const FiniteGroup& g, Elem x, std::uint32_t p) {
  const std::int64_t m = static_cast<std::int64_t>(g.element_order(x));
  const std::int64_t pa = static_cast<std::int64_t>(p_part(m, p));
  const std::int64_t r = m / pa;
  // u = 1 mod p^a, u = 0 mod r.
  std::int64_t u = 0;
  for (std::int64_t k = 0; k < pa; ++k)
    if ((k * r) % pa == 1 % pa) {
      u = k * r;
      break;
    }
  if (pa == 1) u = 0;
  const Elem xp = g.pow(x, u);
  const Elem xq = g.pow(x, ((1 - u) % m + m) % m);
  return {xp, xq};
}

struct SylowHall {
  Subgroup sylow_p;
  std::optional<Subgroup> hall_complement;
};

/// Sylow p-subgroup grown through normalizers from the p-part of a
/// maximal-order element; when it is normal, a complement is assembled
/// greedily from p'-elements.
inline SylowHall sylow_and_hall(const FiniteGroup& g, std::uint32_t p) {
  const std::size_t target = p_part(g.order(), p);
  Elem start = 0;
  std::size_t best = 0;
  for (Elem x = 0; x < g.order(); ++x)
    if (g.element_order(x) > best) {
      best = g.element_order(x);
      start = x;
    }
  Subgroup P = generated_subgroup(g, {element_parts(g, start, p).first});
  while (P.order() < target) {
    Subgroup N = normalizer(g, P);
    std::optional<Elem> ext;
    for (Elem x : N.elements())
      if (!P.contains(x) && is_p_element(g, x, p)) {
        ext = x;
        break;
      }
    if (!ext) throw consistency_failure("p-subgroup below Sylow order has no p-element in its normalizer");
    auto gens = subgroup_generators(g, P);
    gens.push_back(*ext);
    P = generated_subgroup(g, gens);
  }
  SylowHall out{P, std::nullopt};
  if (P.is_normal()) {
    const std::size_t want = g.order() / P.order();
    Subgroup H = trivial_subgroup(g);
    std::vector<Elem> gens;
    for (Elem x = 0; x < g.order() && H.order() < want; ++x) {
      if (H.contains(x) || !is_p_prime_element(g, x, p)) continue;
      auto trial = gens;
      trial.push_back(x);
      Subgroup cand = generated_subgroup(g, trial);
      if (cand.order() % p != 0) {
        gens = std::move(trial);
        H = std::move(cand);
      }
    }
    if (H.order() == want) out.hall_complement = H;
  }
  return out;
}

struct CoresResiduals {
  Subgroup o_p;        // largest normal p-subgroup
  Subgroup o_p_prime;  // largest normal p'-subgroup
  Subgroup o_sup_p;    // smallest normal subgroup with p-group quotient
  Subgroup o_sup_p_prime;
};

inline CoresResiduals cores_and_residuals(const FiniteGroup& g, std::uint32_t p) {
  CoresResiduals out;
  {
    Subgroup P = sylow_and_hall(g, p).sylow_p;
    std::vector<Elem> core = P.elements();
    for (Elem t = 0; t < g.order() && core.size() > 1; ++t) {
      std::vector<Elem> keep;
      for (Elem c : core)
        if (P.contains(g.conj(g.inv(t), c))) keep.push_back(c);
      core = std::move(keep);
    }
    out.o_p = Subgroup::from_closed(g, std::move(core));
  }
  {
    // x lies in O_p' iff its normal closure is a p'-group.
    ClassData cd = conjugacy_class_data(g);
    std::vector<Elem> members;
    for (const auto& c : cd.classes) {
      if (!is_p_prime_element(g, c.representative, p)) continue;
      if (normal_closure(g, std::span<const Elem>(&c.representative, 1)).order() % p == 0) continue;
      members.insert(members.end(), c.elements.begin(), c.elements.end());
    }
    out.o_p_prime = generated_subgroup(g, members);
  }
  std::vector<Elem> pel, qel;
  for (Elem x = 0; x < g.order(); ++x) {
    if (is_p_element(g, x, p)) pel.push_back(x);
    if (is_p_prime_element(g, x, p)) qel.push_back(x);
  }
  out.o_sup_p = generated_subgroup(g, qel);
  out.o_sup_p_prime = generated_subgroup(g, pel);
  return out;
}

/// Phi(P) = P^p [P, P] for a p-subgroup P of g.
inline Subgroup frattini_of_p_group(const FiniteGroup& g, const Subgroup& P, std::uint32_t p) {
  if (!is_p_power(P.order(), p)) throw invalid_input("Frattini subgroup requested for a non-p-group");
  std::vector<Elem> gens;
  for (Elem x : P.elements()) gens.push_back(g.pow(x, p));
  auto d = derived_of(g, P);
  auto dg = subgroup_generators(g, d);
  gens.insert(gens.end(), dg.begin(), dg.end());
  return generated_subgroup(g, gens);
}

/// True iff every element outside G' has conjugacy class equal to g G'.
inline bool is_camina(const FiniteGroup& g) {
  Subgroup d = derived_subgroup(g);
  ClassData cd = conjugacy_class_data(g);
  for (const auto& c : cd.classes) {
    const Elem x = c.representative;
    if (d.contains(x)) continue;
    std::vector<Elem> coset;
    for (Elem k : d.elements()) coset.push_back(g.mul(x, k));
    std::sort(coset.begin(), coset.end());
    if (coset != c.elements) return false;
  }
  return true;
}

inline bool is_frobenius_with_kernel(const FiniteGroup& g, const Subgroup& k) {
  if (!k.is_normal() || k.order() <= 1 || k.order() >= g.order()) return false;
  const Subgroup all = whole_group(g);
  for (Elem x : k.elements()) {
    if (x == 0) continue;
    for (Elem t = 0; t < g.order(); ++t)
      if (!k.contains(t) && g.mul(t, x) == g.mul(x, t)) return false;
  }
  return true;
}

inline bool commute(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
  auto ga = subgroup_generators(g, a), gb = subgroup_generators(g, b);
  for (Elem x : ga)
    for (Elem y : gb)
      if (g.mul(x, y) != g.mul(y, x)) return false;
  return true;
}

}  // namespace soclelab
