#pragma once

// Structural analysis of groups G = G' x| H with G' a Sylow p-subgroup:
// the decomposition of D = G/G'', the central-product splitting for
// Z(G') = G'', the AGL(1,q)/Camina criterion, and the explicit socle
// element that is not in (G')^+ FG when G' is not Camina.
//
// Every existence claim is turned into a search with smallest-index
// tie-breaking, and every claimed property is recorded as a Check. A check
// is "asserted" when the hypotheses under which it is supposed to hold are
// met on the group at hand; a failed asserted check is a consistency failure.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "soclelab/constructions.hpp"
#include "soclelab/errors.hpp"
#include "soclelab/fp_linalg.hpp"
#include "soclelab/group.hpp"
#include "soclelab/group_algebra.hpp"
#include "soclelab/isomorphism.hpp"

namespace soclelab {

struct Check {
  std::string name;
  bool passed = false;
  bool asserted = false;
  std::string detail;
};

class CheckList {
 public:
  void add(std::string name, bool passed, bool asserted, std::string detail = {}) {
    items_.push_back({std::move(name), passed, asserted, std::move(detail)});
  }
  void append(const CheckList& o) { items_.insert(items_.end(), o.items_.begin(), o.items_.end()); }
  const std::vector<Check>& items() const { return items_; }
  std::size_t failures() const {
    return static_cast<std::size_t>(
        std::count_if(items_.begin(), items_.end(), [](const Check& c) { return c.asserted && !c.passed; }));
  }
  bool all_passed() const {
    return std::all_of(items_.begin(), items_.end(), [](const Check& c) { return c.passed; });
  }
  const Check* find(const std::string& name) const {
    for (const auto& c : items_)
      if (c.name == name) return &c;
    return nullptr;
  }

 private:
  std::vector<Check> items_;
};

// ---------------------------------------------------------------------------
// Standing form.

struct StandingForm {
  FiniteGroup group;
  std::uint32_t p = 2;
  Subgroup derived;
  Subgroup second_derived;
  Subgroup center_of_derived;
  Subgroup sylow;
  std::optional<Subgroup> hall;
  bool gprime_is_sylow = false;
  bool h_abelian = false;
  bool op_prime_trivial = false;
  bool z_gprime_equals_gsecond = false;

  bool holds() const { return gprime_is_sylow && hall.has_value() && h_abelian && op_prime_trivial; }
};

inline StandingForm check_standing_form(const FiniteGroup& g, std::uint32_t p) {
  check_modulus(p);
  StandingForm sf;
  sf.group = g;
  sf.p = p;
  sf.derived = derived_subgroup(g);
  sf.second_derived = derived_of(g, sf.derived);
  sf.center_of_derived = center_of(g, sf.derived);
  SylowHall sh = sylow_and_hall(g, p);
  sf.sylow = sh.sylow_p;
  sf.hall = sh.hall_complement;
  sf.gprime_is_sylow = sf.derived.order() == sf.sylow.order() && is_p_power(sf.derived.order(), p);
  if (sf.gprime_is_sylow) sf.sylow = sf.derived;
  sf.h_abelian = sf.hall && as_group(g, *sf.hall).group.is_abelian();
  sf.op_prime_trivial = cores_and_residuals(g, p).o_p_prime.is_trivial();
  sf.z_gprime_equals_gsecond = sf.center_of_derived == sf.second_derived;
  return sf;
}

/// Everything the theorem checks share: standing form, the center of the
/// group algebra, its radical and socle, and the ideal verdict.
struct GroupContext {
  StandingForm sf;
  GroupAlgebra algebra;
  CentralSubspace jacobson;
  CentralSubspace socle;
  IdealVerdict ideal;

  static GroupContext build(const FiniteGroup& g, std::uint32_t p) {
    GroupAlgebra A(g, p);
    CentralSubspace jac = nilradical_center(A);
    CentralSubspace soc = socle_center(A, jac);
    IdealVerdict v = is_socle_ideal(A, soc);
    return GroupContext{check_standing_form(g, p), std::move(A), std::move(jac), std::move(soc), v};
  }

  const FiniteGroup& group() const { return sf.group; }
  std::uint32_t p() const { return sf.p; }
  /// The paper's setting: standing form and soc(ZFG) an ideal.
  bool ideal_setting() const { return sf.holds() && ideal.direct; }
};

// ---------------------------------------------------------------------------
// Elementary abelian subgroups as F_p-vector spaces.

struct ElementaryAbelianCoords {
  std::uint32_t p = 2;
  std::vector<Elem> basis;
  std::vector<std::int64_t> code_of;  // element -> sum c_i p^i, -1 outside
  std::vector<Elem> elem_of;          // code -> element

  std::size_t dim() const { return basis.size(); }
  Vec coords(Elem x) const {
    std::int64_t c = code_of.at(x);
    if (c < 0) throw invalid_input("element outside the elementary abelian subgroup");
    Vec v(dim());
    for (auto& r : v) {
      r = static_cast<Residue>(c % p);
      c /= p;
    }
    return v;
  }
  Elem from_coords(std::span<const Residue> v) const {
    std::size_t c = 0, scale = 1;
    for (std::size_t i = 0; i < v.size(); ++i) {
      c += scale * v[i];
      scale *= p;
    }
    return elem_of.at(c);
  }
};

inline std::optional<ElementaryAbelianCoords> elementary_abelian_coords(const FiniteGroup& g, const Subgroup& V,
                                                                        std::uint32_t p) {
  ElementaryAbelianCoords out;
  out.p = p;
  out.code_of.assign(g.order(), -1);
  out.code_of[0] = 0;
  out.elem_of = {0};
  for (Elem x : V.elements()) {
    if (out.code_of[x] >= 0) continue;
    if (g.element_order(x) != p) return std::nullopt;
    const std::size_t s = out.elem_of.size();
    out.basis.push_back(x);
    Elem power = 0;
    for (std::uint32_t j = 1; j < p; ++j) {
      power = g.mul(power, x);
      for (std::size_t c = 0; c < s; ++c) {
        const Elem y = g.mul(out.elem_of[c], power);
        if (out.code_of[y] >= 0 || !V.contains(y)) return std::nullopt;
        out.code_of[y] = static_cast<std::int64_t>(c + j * s);
        out.elem_of.push_back(y);
      }
    }
  }
  if (out.elem_of.size() != V.order()) return std::nullopt;
  // Abelian: the enumeration above used right multiplication only.
  for (Elem a : out.basis)
    for (Elem b : out.basis)
      if (g.mul(a, b) != g.mul(b, a)) return std::nullopt;
  return out;
}

namespace detail {

inline std::optional<FpMatrix> invert(const FpMatrix& m) {
  const std::size_t n = m.rows();
  FpMatrix aug(m.p(), n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, n + r) = 1;
  }
  auto [red, rk] = rref(aug);
  if (rk < n) return std::nullopt;
  for (std::size_t r = 0; r < n; ++r)
    if (red.at(r, r) != 1) return std::nullopt;
  FpMatrix inv(m.p(), n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv.at(r, c) = red.at(r, n + c);
  return inv;
}

inline FpMatrix add_matrices(const FpMatrix& a, const FpMatrix& b) {
  FpMatrix out(a.p(), a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out.at(r, c) = (a.at(r, c) + b.at(r, c)) % a.p();
  return out;
}

inline FpMatrix scale_matrix(const FpMatrix& a, Residue k) {
  FpMatrix out(a.p(), a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      out.at(r, c) = static_cast<Residue>(std::uint64_t(a.at(r, c)) * k % a.p());
  return out;
}

inline std::vector<Elem> span_elements(const ElementaryAbelianCoords& co, const Subspace& s) {
  std::vector<Elem> out;
  const std::size_t d = s.dim();
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= co.p;
  for (std::size_t code = 0; code < total; ++code) {
    Vec v(co.dim(), 0);
    std::size_t c = code;
    for (std::size_t i = 0; i < d; ++i) {
      const Residue k = static_cast<Residue>(c % co.p);
      c /= co.p;
      for (std::size_t j = 0; j < co.dim(); ++j)
        v[j] = static_cast<Residue>((v[j] + std::uint64_t(k) * s.basis().at(i, j)) % co.p);
    }
    out.push_back(co.from_coords(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Subgroup join(const FiniteGroup& g, const std::vector<Subgroup>& parts) {
  std::vector<Elem> gens;
  for (const auto& s : parts) {
    auto sg = subgroup_generators(g, s);
    gens.insert(gens.end(), sg.begin(), sg.end());
  }
  return generated_subgroup(g, gens);
}

inline Subgroup cyclic_subgroup(const FiniteGroup& g, Elem x) { return generated_subgroup(g, {x}); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Decomposition of D = G / G''.

struct DDecomposition {
  QuotientMap pi;                       // G -> D
  Subgroup d_prime;                     // D' (in D)
  Subgroup z_d;                         // Z(G')G''/G'' (in D)
  Subgroup t;                           // T (in D)
  std::vector<Subgroup> factors;        // T_i (in D)
  std::vector<std::optional<Elem>> e;   // e_i in H (elements of G)
  std::vector<std::size_t> s;           // |T_i| - 1
  std::vector<Subgroup> m;              // M_i (in G)
  std::vector<std::optional<Elem>> h;   // smallest nontrivial element of C_H(M_i)
  Subgroup hall;                        // H (in G)
  bool maschke_ok = false;

  std::size_t n() const { return factors.size(); }
};

/// T built as the kernel of the H-averaged projection of M/G'' onto the
/// image of M cap Z(G'); T_i are the minimal normal subgroups of D inside T.
inline DDecomposition decompose_D(const GroupContext& ctx) {
  const StandingForm& sf = ctx.sf;
  if (!sf.holds()) throw unsupported_input("group is not in standing form at this prime");
  const FiniteGroup& g = sf.group;
  const std::uint32_t p = sf.p;
  DDecomposition dd;
  dd.hall = *sf.hall;
  dd.pi = quotient(g, sf.second_derived);
  const FiniteGroup& D = dd.pi.target;
  dd.d_prime = dd.pi.image(sf.derived);
  dd.z_d = dd.pi.image(sf.center_of_derived);

  // V = M/G'' = elements of D' of order dividing p.
  std::vector<Elem> vel;
  for (Elem x : dd.d_prime.elements())
    if (D.pow(x, p) == 0) vel.push_back(x);
  Subgroup V = Subgroup::from_closed(D, vel);
  std::vector<Elem> wel;
  for (Elem x : sf.center_of_derived.elements())
    if (sf.derived.contains(x) && sf.second_derived.contains(g.pow(x, p))) wel.push_back(dd.pi.proj[x]);
  Subgroup W = Subgroup::from_closed(D, wel);

  auto co = elementary_abelian_coords(D, V, p);
  if (!co) throw consistency_failure("M/G'' is not elementary abelian");
  const std::size_t r = co->dim();

  std::vector<Vec> wvecs;
  for (Elem x : W.elements()) wvecs.push_back(co->coords(x));
  Subspace Wsp = Subspace::span(p, r, wvecs);
  // Basis W | complement, as columns of B.
  std::vector<Vec> cols = basis_vectors(Wsp);
  const std::size_t a = cols.size();
  Subspace acc = Wsp;
  for (std::size_t j = 0; j < r && cols.size() < r; ++j) {
    Vec ej(r, 0);
    ej[j] = 1;
    if (!acc.contains(ej)) {
      cols.push_back(ej);
      acc = acc.sum(Subspace::span(p, r, {ej}));
    }
  }
  FpMatrix B(p, r, r);
  for (std::size_t c = 0; c < r; ++c)
    for (std::size_t i = 0; i < r; ++i) B.at(i, c) = cols[c][i];
  FpMatrix Binv = r ? *detail::invert(B) : FpMatrix(p, 0, 0);
  FpMatrix diag(p, r, r);
  for (std::size_t i = 0; i < a; ++i) diag.at(i, i) = 1;
  FpMatrix P0 = r ? B * diag * Binv : FpMatrix(p, 0, 0);

  auto action = [&](Elem h) {
    FpMatrix A(p, r, r);
    const Elem hd = dd.pi.proj[h];
    for (std::size_t c = 0; c < r; ++c) {
      Vec v = co->coords(D.conj(hd, co->basis[c]));
      for (std::size_t i = 0; i < r; ++i) A.at(i, c) = v[i];
    }
    return A;
  };
  FpMatrix avg(p, r, r);
  for (Elem h : dd.hall.elements()) {
    if (!r) break;
    avg = detail::add_matrices(avg, action(h) * P0 * action(g.inv(h)));
  }
  const Residue hinv = mod_inv(static_cast<Residue>(dd.hall.order() % p), p);
  FpMatrix proj = r ? detail::scale_matrix(avg, hinv) : FpMatrix(p, 0, 0);
  // The averaged map is a projection onto W when Maschke applies.
  dd.maschke_ok = (r == 0) || (proj * proj == proj && Subspace::span(proj.transpose()).dim() == Wsp.dim());
  Subspace Tsp = r ? kernel(proj) : Subspace::zero(p, 0);
  dd.t = Subgroup::from_closed(D, r ? detail::span_elements(*co, Tsp) : std::vector<Elem>{0});

  // Minimal normal subgroups of D inside T.
  std::vector<Subgroup> closures;
  for (Elem x : dd.t.elements()) {
    if (x == 0) continue;
    Subgroup c = normal_closure(D, std::span<const Elem>(&x, 1));
    if (std::none_of(closures.begin(), closures.end(), [&](const Subgroup& o) { return o == c; }))
      closures.push_back(std::move(c));
  }
  for (const auto& c : closures) {
    bool minimal = std::none_of(closures.begin(), closures.end(),
                                [&](const Subgroup& o) { return o.order() < c.order() && o.subset_of(c); });
    if (minimal) dd.factors.push_back(c);
  }
  std::sort(dd.factors.begin(), dd.factors.end(),
            [](const Subgroup& x, const Subgroup& y) { return x.elements()[1] < y.elements()[1]; });

  // e_i: transitive on T_i \ {1}, centralizing the other factors.
  for (std::size_t i = 0; i < dd.n(); ++i) {
    dd.s.push_back(dd.factors[i].order() - 1);
    std::optional<Elem> found;
    for (Elem e : dd.hall.elements()) {
      const Elem ed = dd.pi.proj[e];
      bool ok = true;
      for (std::size_t j = 0; j < dd.n() && ok; ++j) {
        if (j == i) continue;
        for (Elem t : dd.factors[j].elements())
          if (D.conj(ed, t) != t) {
            ok = false;
            break;
          }
      }
      if (!ok) continue;
      const Elem t0 = dd.factors[i].elements()[1];
      std::size_t orbit = 0;
      Elem t = t0;
      do {
        t = D.conj(ed, t);
        ++orbit;
      } while (t != t0);
      if (orbit == dd.s[i]) {
        found = e;
        break;
      }
    }
    dd.e.push_back(found);
  }

  // M_i and h_i.
  for (std::size_t i = 0; i < dd.n(); ++i) {
    std::vector<Subgroup> parts{dd.z_d};
    for (std::size_t j = 0; j < dd.n(); ++j)
      if (j != i) parts.push_back(dd.factors[j]);
    Subgroup Ni = detail::join(D, parts);
    Subgroup Mi = dd.pi.preimage(Ni);
    Subgroup C = centralizer(g, subgroup_generators(g, Mi), dd.hall);
    std::optional<Elem> hi;
    if (C.order() > 1) hi = C.elements()[1];
    dd.m.push_back(std::move(Mi));
    dd.h.push_back(hi);
  }
  return dd;
}

// ---------------------------------------------------------------------------
// Theorem A.

inline CheckList check_theorem_A(const GroupContext& ctx, const DDecomposition& dd) {
  CheckList out;
  const bool asserted = ctx.ideal_setting();
  const FiniteGroup& g = ctx.group();
  const FiniteGroup& D = dd.pi.target;
  const Subgroup& H = dd.hall;

  out.add("maschke_projection", dd.maschke_ok, asserted);

  // (D1)
  Subgroup tz = detail::join(D, {dd.t, dd.z_d});
  const bool d1_split = intersection(D, dd.t, dd.z_d).is_trivial() && tz == dd.d_prime;
  out.add("D1.d_prime_is_T_times_Z_D", d1_split, asserted,
          "|D'| = " + std::to_string(dd.d_prime.order()) + ", |T| = " + std::to_string(dd.t.order()) +
              ", |Z_D| = " + std::to_string(dd.z_d.order()));
  std::size_t prod = 1;
  for (const auto& f : dd.factors) prod *= f.order();
  const bool t_product = prod == dd.t.order() && detail::join(D, dd.factors) == dd.t;
  out.add("D1.T_is_product_of_minimal_normal", t_product, asserted, "n = " + std::to_string(dd.n()));

  // Remark 3.2 / 3.4
  bool sizes = std::all_of(dd.factors.begin(), dd.factors.end(), [](const Subgroup& f) { return f.order() >= 3; });
  out.add("T_i_order_at_least_3", sizes, asserted);
  std::vector<Subgroup> kernels;
  for (const auto& f : dd.factors) {
    std::vector<Elem> ker;
    for (Elem h : H.elements()) {
      const Elem hd = dd.pi.proj[h];
      if (std::all_of(f.elements().begin(), f.elements().end(), [&](Elem t) { return D.conj(hd, t) == t; }))
        ker.push_back(h);
    }
    kernels.push_back(Subgroup::from_closed(g, ker));
  }
  bool distinct = true;
  for (std::size_t i = 0; i < kernels.size(); ++i)
    for (std::size_t j = i + 1; j < kernels.size(); ++j)
      if (kernels[i] == kernels[j]) distinct = false;
  out.add("T_i_have_distinct_kernels", distinct, asserted);

  // (D2)
  const bool all_e = std::all_of(dd.e.begin(), dd.e.end(), [](const auto& e) { return e.has_value(); });
  out.add("D2.e_i_exist", all_e, asserted);
  if (all_e) {
    std::vector<Elem> tel = dd.t.elements();
    std::vector<Elem> ctv;
    for (Elem h : H.elements()) {
      const Elem hd = dd.pi.proj[h];
      if (std::all_of(tel.begin(), tel.end(), [&](Elem t) { return D.conj(hd, t) == t; })) ctv.push_back(h);
    }
    std::vector<Elem> gens;
    for (const auto& e : dd.e) gens.push_back(*e);
    for (Elem c : ctv) gens.push_back(c);
    out.add("D2.H_generated_by_e_i_and_C_H(T)", generated_subgroup(g, gens) == H, asserted);
    bool quot = true;
    for (std::size_t i = 0; i < dd.n(); ++i) {
      std::vector<Elem> qg = subgroup_generators(g, kernels[i]);
      qg.push_back(*dd.e[i]);
      if (!(generated_subgroup(g, qg) == H)) quot = false;
    }
    out.add("D2.e_i_generates_H_mod_C_H(T_i)", quot, asserted);
  }

  // (D3)
  const bool all_h = std::all_of(dd.h.begin(), dd.h.end(), [](const auto& h) { return h.has_value(); });
  out.add("D3.C_H(M_i)_nontrivial", all_h, asserted);

  // Lemma 3.3 on the chosen h_i.
  ClassData dcd = conjugacy_class_data(D);
  ClpPrimeResult clp = clp_prime(ctx.algebra);
  bool shape = true, in_clp = true;
  for (std::size_t i = 0; i < dd.n(); ++i) {
    if (!dd.h[i]) continue;
    const Elem hd = dd.pi.proj[*dd.h[i]];
    std::vector<Elem> coset;
    for (Elem t : dd.factors[i].elements()) coset.push_back(D.mul(t, hd));
    std::sort(coset.begin(), coset.end());
    if (coset != dcd.classes[dcd.class_of[hd]].elements) shape = false;
    const std::size_t k = ctx.algebra.class_data().class_of[*dd.h[i]];
    if (std::find(clp.classes.begin(), clp.classes.end(), k) == clp.classes.end()) in_clp = false;
  }
  out.add("lemma_C_H(M_i)_class_shape", shape, asserted, "[h_i-bar] = T_i h_i-bar in D");
  out.add("lemma_C_H(M_i)_class_in_Cl_p'", in_clp, asserted);
  out.add("Cl_p'_closed_form_agrees", clp.definitions_agree, true);

  // Support patterns in T decide conjugacy in D.
  if (dd.t.order() <= 256 && t_product) {
    std::vector<std::uint32_t> pattern(D.order(), 0);
    std::vector<char> seen(D.order(), 0);
    std::function<void(std::size_t, Elem, std::uint32_t)> rec = [&](std::size_t i, Elem acc, std::uint32_t bits) {
      if (i == dd.n()) {
        pattern[acc] = bits;
        seen[acc] = 1;
        return;
      }
      for (Elem t : dd.factors[i].elements()) rec(i + 1, D.mul(acc, t), bits | (t ? (1u << i) : 0u));
    };
    if (dd.n() < 32) rec(0, 0, 0);
    bool ok = dd.n() < 32;
    for (Elem a : dd.t.elements())
      for (Elem b : dd.t.elements()) {
        const bool conj = dcd.class_of[a] == dcd.class_of[b];
        if (conj != (pattern[a] == pattern[b])) ok = false;
      }
    out.add("support_pattern_conjugacy_in_T", ok, asserted, "|T| = " + std::to_string(dd.t.order()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Theorem B.

struct CentralProductSplit {
  std::vector<Elem> g;                 // g_i
  std::vector<Subgroup> components;    // G_i = <g_i, e_i>
  std::vector<bool> component_ideal;   // soc(Z F G_i) ideal in F G_i
  CheckList checks;
};

/// U_h with [h] = U_h h.
inline std::vector<Elem> class_translate(const FiniteGroup& g, Elem h) {
  std::vector<Elem> u;
  for (Elem c : conjugacy_class_of(g, h)) u.push_back(g.mul(c, g.inv(h)));
  std::sort(u.begin(), u.end());
  return u;
}

inline FiniteGroup agl_product(const std::vector<Subgroup>& factors, GroupOptions opts = {}) {
  std::vector<FiniteGroup> parts;
  for (const auto& f : factors) parts.push_back(agl1_group(f.order(), opts));
  return direct_product(parts, GroupOptions{std::size_t(1) << 30});
}

inline CentralProductSplit split_central_product(const GroupContext& ctx, const DDecomposition& dd) {
  const StandingForm& sf = ctx.sf;
  if (!sf.holds() || !sf.z_gprime_equals_gsecond)
    throw unsupported_input("central-product splitting needs the standing form with Z(G') = G''");
  const bool asserted = ctx.ideal.direct;
  const FiniteGroup& g = ctx.group();
  const FiniteGroup& D = dd.pi.target;
  CentralProductSplit out;
  CheckList& ck = out.checks;
  const std::size_t n = dd.n();
  const bool have_all = std::all_of(dd.e.begin(), dd.e.end(), [](auto& e) { return e.has_value(); }) &&
                        std::all_of(dd.h.begin(), dd.h.end(), [](auto& h) { return h.has_value(); });
  ck.add("e_i_and_h_i_available", have_all, asserted);
  if (!have_all) return out;

  // Remark 4.1
  bool orders = true;
  std::size_t prod = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (g.element_order(*dd.e[i]) != dd.s[i]) orders = false;
    prod *= dd.s[i];
  }
  bool trivial_meets = true;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Elem> others;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) others.push_back(*dd.e[j]);
    if (!intersection(g, detail::cyclic_subgroup(g, *dd.e[i]), generated_subgroup(g, others)).is_trivial())
      trivial_meets = false;
  }
  ck.add("H_is_product_of_<e_i>_with_ord_s_i", orders && prod == dd.hall.order() && trivial_meets, asserted);

  // Lemma 4.2
  if (n > 0) {
    FiniteGroup target = agl_product(dd.factors);
    IsomorphismVerdict iso = isomorphism_verdict(D, target);
    ck.add("D_isomorphic_to_product_of_AGL", iso.isomorphic, asserted,
           iso.by_fingerprint ? "fingerprint comparison (order above search limit)" : "isomorphism search");
  }

  std::vector<Subgroup> L;
  for (const auto& f : dd.factors) L.push_back(dd.pi.preimage(f));
  bool lcomm = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!commute(g, L[i], L[j])) lcomm = false;
  ck.add("L_i_pairwise_commute", lcomm, asserted);

  bool shape = true, g_out = true, commute_e = true, real = true, comm_conj = true, indep = true;
  for (std::size_t i = 0; i < n; ++i) {
    const Elem h = *dd.h[i];
    const Elem e = *dd.e[i];
    std::vector<Elem> U = class_translate(g, h);
    const Elem gi = U.size() > 1 ? U[1] : 0;
    out.g.push_back(gi);
    std::vector<Elem> expect{0};
    Elem ek = 0;
    for (std::size_t k = 0; k < dd.s[i]; ++k) {
      expect.push_back(g.conj(ek, gi));
      ek = g.mul(ek, e);
    }
    std::sort(expect.begin(), expect.end());
    expect.erase(std::unique(expect.begin(), expect.end()), expect.end());
    if (U != expect || U.size() != dd.factors[i].order()) shape = false;
    if (!L[i].contains(gi) || sf.second_derived.contains(gi)) g_out = false;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && g.commutator(gi, *dd.e[j]) != 0) commute_e = false;
    if (!are_conjugate(g, gi, g.inv(gi))) real = false;
    for (std::size_t k = 1; k < dd.s[i]; ++k)
      if (!are_conjugate(g, gi, g.commutator(g.pow(e, static_cast<std::int64_t>(k)), gi))) comm_conj = false;
    // Every admissible h gives conjugate choices.
    auto cls = conjugacy_class_of(g, gi);
    Subgroup C = centralizer(g, subgroup_generators(g, dd.m[i]), dd.hall);
    for (Elem h2 : C.elements()) {
      if (h2 == 0) continue;
      for (Elem u : class_translate(g, h2))
        if (u != 0 && !std::binary_search(cls.begin(), cls.end(), u)) indep = false;
    }
    out.components.push_back(generated_subgroup(g, {gi, e}));
  }
  ck.add("class_of_h_i_is_U_h_i", shape, asserted);
  ck.add("g_i_in_L_i_outside_G''", g_out, asserted);
  ck.add("g_i_commutes_with_e_j", commute_e, asserted);
  ck.add("g_i_conjugate_to_inverse_and_commutators", real && comm_conj, asserted);
  ck.add("g_i_independent_of_h_choice", indep, asserted);

  bool pairwise = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!commute(g, out.components[i], out.components[j])) pairwise = false;
  ck.add("components_pairwise_commute", pairwise, asserted);
  ck.add("components_generate_G", n > 0 ? detail::join(g, out.components) == whole_group(g) : g.order() == 1,
         asserted);

  bool ci = true, cii = true, ciii = true;
  for (const auto& comp : out.components) {
    auto eg = as_group(g, comp);
    const FiniteGroup& Gi = eg.group;
    GroupAlgebra Ai(Gi, sf.p);
    const bool ideal = is_socle_ideal(Ai).direct;
    out.component_ideal.push_back(ideal);
    if (!ideal) ci = false;
    Subgroup d1 = derived_subgroup(Gi);
    Subgroup d2 = derived_of(Gi, d1);
    Subgroup syl = sylow_and_hall(Gi, sf.p).sylow_p;
    if (d1.order() != syl.order() || !(center_of(Gi, d1) == d2)) cii = false;
    QuotientMap q = quotient(Gi, d2);
    Subgroup top = q.image(d1);
    bool minimal = !top.is_trivial();
    for (Elem x : top.elements())
      if (x != 0 && normal_closure(q.target, std::span<const Elem>(&x, 1)).order() != top.order()) minimal = false;
    if (!minimal) ciii = false;
  }
  ck.add("component_socle_ideal", ci, asserted);
  ck.add("component_derived_sylow_and_Z_equals_second_derived", cii, asserted);
  ck.add("component_derived_quotient_minimal_normal", ciii, asserted);
  return out;
}

// ---------------------------------------------------------------------------
// Witness element (Theorem C, condition (iii) failing).

struct WitnessReport {
  bool computed = false;
  bool paper_setting = false;  // (i), (ii) hold, G' not Camina, Z(G) = 1
  std::string reason;          // why not computed
  Elem g1 = 0;
  std::optional<Elem> h1;
  std::size_t c_order = 0;
  std::size_t second_derived_order = 0;
  Vec alpha;
  Vec y;  // FG coordinates
  std::size_t nonzero_coefficients = 0;
  bool well_defined = false;
  bool central = false;
  bool annihilates_radical_basis = false;
  bool in_socle = false;
  bool outside_gprime_fg = false;
  CheckList checks;
};

struct TheoremCReport {
  bool applicable = false;
  std::string reason;
  bool hypotheses_ok = false;
  bool cond_agl = false;
  bool agl_by_fingerprint = false;
  bool cond_chg = false;
  bool cond_camina = false;
  bool predicted = false;
  bool direct = false;
  std::optional<WitnessReport> witness;
  CheckList checks;
};

inline bool is_minimal_normal(const FiniteGroup& g, const Subgroup& n) {
  if (n.is_trivial() || !n.is_normal()) return false;
  for (Elem x : n.elements())
    if (x != 0 && normal_closure(g, std::span<const Elem>(&x, 1)).order() != n.order()) return false;
  return true;
}

inline WitnessReport witness_non_ideal(const GroupContext& ctx, bool cond_agl, bool cond_chg, bool cond_camina) {
  const StandingForm& sf = ctx.sf;
  const FiniteGroup& g = ctx.group();
  const std::uint32_t p = sf.p;
  WitnessReport w;
  w.second_derived_order = sf.second_derived.order();
  auto co = elementary_abelian_coords(g, sf.second_derived, p);
  if (!co || sf.second_derived.is_trivial()) {
    w.reason = "G'' is trivial or not elementary abelian";
    return w;
  }
  Subgroup chg = centralizer(g, subgroup_generators(g, sf.second_derived), *sf.hall);
  if (chg.order() > 1) {
    w.h1 = chg.elements()[1];
    auto U = class_translate(g, *w.h1);
    w.g1 = U.size() > 1 ? U[1] : 0;
  } else {
    for (Elem x : sf.derived.elements())
      if (!sf.second_derived.contains(x)) {
        w.g1 = x;
        break;
      }
  }
  std::vector<Elem> comms;
  for (Elem a : sf.derived.elements()) comms.push_back(g.commutator(a, w.g1));
  Subgroup C = generated_subgroup(g, comms);
  w.c_order = C.order();
  if (C.order() == sf.second_derived.order()) {
    w.reason = "C = G'' (G' is Camina on this coset)";
    return w;
  }
  w.computed = true;
  w.paper_setting = cond_agl && cond_chg && !cond_camina && center(g).is_trivial();

  // alpha: first RREF basis vector of the functionals vanishing on C.
  FpMatrix rows(p, 0, co->dim());
  for (Elem c : subgroup_generators(g, C)) rows.append_row(co->coords(c));
  Subspace funcs = kernel(rows);
  w.alpha = funcs.basis().row_vec(0);
  auto alpha_of = [&](Elem u) {
    Vec v = co->coords(u);
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += std::uint64_t(v[i]) * w.alpha[i];
    return static_cast<Residue>(s % p);
  };

  const GroupAlgebra& A = ctx.algebra;
  w.y = A.zero();
  std::vector<char> assigned(g.order(), 0);
  w.well_defined = true;
  for (Elem u : sf.second_derived.elements()) {
    const Residue val = alpha_of(u);
    for (Elem x : conjugacy_class_of(g, g.mul(w.g1, u))) {
      if (assigned[x] && w.y[x] != val) w.well_defined = false;
      assigned[x] = 1;
      w.y[x] = val;
    }
  }
  w.nonzero_coefficients = static_cast<std::size_t>(std::count_if(w.y.begin(), w.y.end(), [](Residue r) { return r; }));
  auto yc = A.restrict_to_center(w.y);
  w.central = yc.has_value();
  if (yc) {
    w.annihilates_radical_basis = true;
    for (const auto& b : jrad_basis_lemma25(A)) {
      Vec prod = A.central_multiply(*yc, b);
      if (std::any_of(prod.begin(), prod.end(), [](Residue r) { return r; })) {
        w.annihilates_radical_basis = false;
        break;
      }
    }
    w.in_socle = ctx.socle.space.contains(*yc);
  }
  w.outside_gprime_fg = !gprime_plus_fg(A).contains(w.y);
  const bool asserted = w.paper_setting;
  w.checks.add("witness_well_defined", w.well_defined, asserted);
  w.checks.add("witness_central", w.central, asserted);
  w.checks.add("witness_annihilates_radical_basis", w.annihilates_radical_basis, asserted);
  w.checks.add("witness_in_socle", w.in_socle, asserted);
  w.checks.add("witness_outside_gprime_fg", w.outside_gprime_fg, asserted);
  return w;
}

inline TheoremCReport check_theorem_C(const GroupContext& ctx) {
  const StandingForm& sf = ctx.sf;
  const FiniteGroup& g = ctx.group();
  TheoremCReport r;
  r.direct = ctx.ideal.direct;
  r.hypotheses_ok = sf.holds();
  if (!r.hypotheses_ok) {
    r.reason = "standing form does not hold";
    return r;
  }
  if (!sf.z_gprime_equals_gsecond) {
    r.reason = "Z(G') differs from G''";
    return r;
  }
  QuotientMap pi = quotient(g, sf.second_derived);
  Subgroup dprime = pi.image(sf.derived);
  if (!is_minimal_normal(pi.target, dprime)) {
    r.reason = "D' is not a minimal normal subgroup of D";
    return r;
  }
  r.applicable = true;

  const std::size_t q = dprime.order();
  if (pi.target.order() == q * (q - 1)) {
    IsomorphismVerdict iso = isomorphism_verdict(pi.target, agl1_group(q, GroupOptions{std::size_t(1) << 30}));
    r.cond_agl = iso.isomorphic;
    r.agl_by_fingerprint = iso.by_fingerprint;
  }
  r.cond_chg = centralizer(g, subgroup_generators(g, sf.second_derived), *sf.hall).order() > 1;

  auto eg = as_group(g, sf.derived);
  r.cond_camina = is_camina(eg.group);
  // Relative reading: [x]_{G'} = x G'' for x in G' \ G''.
  bool relative = true;
  ClassData dcd = conjugacy_class_data(eg.group);
  for (Elem x : sf.derived.elements()) {
    if (sf.second_derived.contains(x)) continue;
    std::vector<Elem> cls;
    for (Elem y : dcd.classes[dcd.class_of[eg.local[x]]].elements) cls.push_back(eg.embed[y]);
    std::sort(cls.begin(), cls.end());
    std::vector<Elem> coset;
    for (Elem z : sf.second_derived.elements()) coset.push_back(g.mul(x, z));
    std::sort(coset.begin(), coset.end());
    if (cls != coset) {
      relative = false;
      break;
    }
  }
  r.checks.add("camina_readings_agree", relative == r.cond_camina, true);

  r.predicted = r.cond_agl && r.cond_chg && r.cond_camina;
  r.checks.add("theorem_C_iff", r.predicted == r.direct, true,
               std::string("predicted ") + (r.predicted ? "ideal" : "not ideal") + ", direct " +
                   (r.direct ? "ideal" : "not ideal"));
  if (sf.p % 2 == 1)
    r.checks.add("odd_p_agl_and_camina_imply_chg", !(r.cond_agl && r.cond_camina) || r.cond_chg, true);
  if (r.direct) {
    const bool z1 = center(g).is_trivial();
    bool sl = false;
    if (!z1 && g.order() == 24) sl = find_isomorphism(g, sl2_group(3)).has_value();
    r.checks.add("center_trivial_or_SL2(3)", z1 || sl, true);
  }
  if (!r.direct) {
    WitnessReport w = witness_non_ideal(ctx, r.cond_agl, r.cond_chg, r.cond_camina);
    r.checks.append(w.checks);
    r.witness = std::move(w);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Annihilator statements in Z(FD).

inline CheckList verify_annihilator_lemmas(const GroupContext& ctx, const DDecomposition& dd) {
  CheckList out;
  const bool asserted = ctx.ideal_setting();
  const FiniteGroup& D = dd.pi.target;
  GroupAlgebra AD(D, ctx.p());
  const auto& dcd = AD.class_data();
  auto b_of = [&](std::size_t k) {
    Vec b = AD.class_sum(k);
    const std::size_t size = AD.classes()[k].size();
    if (size % ctx.p() != 0) b[0] = AD.mod_p(-static_cast<std::int64_t>(size));
    return b;
  };
  ClpPrimeResult clp = clp_prime(ctx.algebra);
  std::vector<Vec> S;
  for (std::size_t k : clp.classes) {
    const Elem rep = ctx.algebra.classes()[k].representative;
    S.push_back(b_of(dcd.class_of[dd.pi.proj[rep]]));
  }
  CentralSubspace annS = annihilator_in_center(AD, S);
  Subspace fd = expand_subspace(AD, annS.space);
  out.add("annihilator_of_Cl_p'_inside_D'_plus_FD", normal_sum_times_fg(AD, dd.d_prime).contains(fd), asserted);

  std::vector<Vec> M;
  for (std::size_t k = 1; k < AD.class_count(); ++k) {
    const auto& cls = AD.classes()[k].elements;
    if (std::all_of(cls.begin(), cls.end(), [&](Elem x) { return dd.z_d.contains(x); })) {
      Vec b = AD.class_sum(k);
      b[0] = AD.mod_p(-static_cast<std::int64_t>(cls.size()));
      M.push_back(std::move(b));
    }
  }
  for (const auto& f : dd.factors) {
    auto c = AD.restrict_to_center(AD.set_sum(f.elements()));
    if (!c) throw consistency_failure("T_i is not a union of classes of D");
    M.push_back(*c);
  }
  CentralSubspace annM = annihilator_in_center(AD, M);
  out.add("annihilator_of_M_equals_annihilator_of_Cl_p'", annM.space == annS.space, asserted,
          "|M| = " + std::to_string(M.size()));
  return out;
}

// ---------------------------------------------------------------------------
// Reduction to O_{p'}(G) = 1 and O^p(G) = G.

struct ReductionStep {
  std::string name;
  std::size_t order_before = 0;
  std::size_t order_after = 0;
  bool ideal_before = false;
  bool ideal_after = false;
};

struct ReductionResult {
  std::vector<ReductionStep> steps;
  FiniteGroup reduced;
  bool split_holds = false;
  CheckList checks;
};

inline bool socle_is_ideal(const FiniteGroup& g, std::uint32_t p) { return is_socle_ideal(GroupAlgebra(g, p)).direct; }

inline ReductionResult reduction_pipeline(const FiniteGroup& g, std::uint32_t p) {
  SylowHall sh = sylow_and_hall(g, p);
  if (!sh.sylow_p.is_normal() || !sh.hall_complement)
    throw unsupported_input("group is not a semidirect product of its Sylow p-subgroup and a complement");
  const bool h_abelian = as_group(g, *sh.hall_complement).group.is_abelian();
  ReductionResult out;
  const bool v0 = socle_is_ideal(g, p);
  CoresResiduals cr = cores_and_residuals(g, p);
  QuotientMap q = quotient(g, cr.o_p_prime);
  const FiniteGroup& Q = q.target;
  const bool v1 = Q.order() == g.order() ? v0 : socle_is_ideal(Q, p);
  out.steps.push_back({"quotient_by_O_p'", g.order(), Q.order(), v0, v1});
  out.checks.add("O_p'_quotient_preserves_verdict", v0 == v1, h_abelian);

  SylowHall shq = sylow_and_hall(Q, p);
  Subgroup P = shq.sylow_p;
  Subgroup H = shq.hall_complement ? *shq.hall_complement : trivial_subgroup(Q);
  Subgroup cph = centralizer(Q, subgroup_generators(Q, H), P);
  Subgroup opq = cores_and_residuals(Q, p).o_sup_p;
  out.split_holds = commute(Q, cph, opq) && detail::join(Q, {cph, opq}) == whole_group(Q);
  out.checks.add("G_is_C_P(H)_central_O^p(G)", out.split_holds, v1);
  const FiniteGroup core = as_group(Q, opq).group;
  if (out.split_holds) {
    const bool vc = socle_is_ideal(as_group(Q, cph).group, p);
    const bool vo = core.order() == Q.order() ? v1 : socle_is_ideal(core, p);
    out.steps.push_back({"split_off_C_P(H)", Q.order(), core.order(), v1, vo});
    out.checks.add("split_factors_have_ideal_socle", vc && vo, v1);
    out.checks.add("split_preserves_verdict", v1 == (vc && vo), v1);
    out.reduced = core;
    const bool syl = derived_subgroup(core).order() == p_part(core.order(), p);
    out.checks.add("reduced_group_has_sylow_derived_subgroup", syl, v1);
  } else {
    out.reduced = Q;
  }
  return out;
}

}  // namespace soclelab
