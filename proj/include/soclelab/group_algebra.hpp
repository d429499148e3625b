#pragma once

// The group algebra F_p G and its center Z F_p G.
//
// FG elements are coefficient vectors indexed by group elements. Central
// elements are vectors indexed by conjugacy classes (class-sum basis, in the
// order of conjugacy_class_data, so the identity class comes first).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "soclelab/errors.hpp"
#include "soclelab/fp_linalg.hpp"
#include "soclelab/group.hpp"

namespace soclelab {

enum class SubspaceRole { jacobson_radical, socle, annihilator, generic };

inline const char* role_name(SubspaceRole r) {
  switch (r) {
    case SubspaceRole::jacobson_radical: return "jacobson_radical";
    case SubspaceRole::socle: return "socle";
    case SubspaceRole::annihilator: return "annihilator";
    case SubspaceRole::generic: return "generic";
  }
  return "generic";
}

struct CentralSubspace {
  Subspace space;
  SubspaceRole role = SubspaceRole::generic;
  std::size_t dim() const { return space.dim(); }
};

class GroupAlgebra {
 public:
  GroupAlgebra(FiniteGroup g, std::uint32_t p) : g_(std::move(g)), p_(p) {
    check_modulus(p);
    cd_ = conjugacy_class_data(g_);
  }

  const FiniteGroup& group() const { return g_; }
  std::uint32_t p() const { return p_; }
  const ClassData& class_data() const { return cd_; }
  const std::vector<ConjClass>& classes() const { return cd_.classes; }
  std::size_t class_count() const { return cd_.classes.size(); }
  std::size_t order() const { return g_.order(); }

  // --- FG level -----------------------------------------------------------

  Vec zero() const { return Vec(order(), 0); }
  Vec basis_element(Elem x) const {
    Vec v = zero();
    v[x] = 1;
    return v;
  }
  Vec one() const { return basis_element(0); }

  /// X^+ for an element set.
  Vec set_sum(std::span<const Elem> xs) const {
    Vec v = zero();
    for (Elem x : xs) v[x] = (v[x] + 1) % p_;
    return v;
  }

  Vec multiply(std::span<const Residue> a, std::span<const Residue> b) const {
    check_fg(a);
    check_fg(b);
    std::vector<std::uint64_t> acc(order(), 0);
    for (Elem x = 0; x < order(); ++x) {
      if (!a[x]) continue;
      for (Elem y = 0; y < order(); ++y)
        if (b[y]) acc[g_.mul(x, y)] += std::uint64_t(a[x]) * b[y] % p_;
    }
    Vec out(order());
    for (std::size_t i = 0; i < order(); ++i) out[i] = static_cast<Residue>(acc[i] % p_);
    return out;
  }

  Vec add(std::span<const Residue> a, std::span<const Residue> b) const {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] + b[i]) % p_;
    return out;
  }

  Vec scale(std::span<const Residue> a, std::int64_t c) const {
    const Residue k = mod_reduce(c, p_);
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = static_cast<Residue>(std::uint64_t(a[i]) * k % p_);
    return out;
  }

  /// g x and x g for a group element g.
  Vec left_translate(Elem g, std::span<const Residue> a) const {
    Vec out = zero();
    for (Elem x = 0; x < order(); ++x) out[g_.mul(g, x)] = a[x];
    return out;
  }
  Vec right_translate(std::span<const Residue> a, Elem g) const {
    Vec out = zero();
    for (Elem x = 0; x < order(); ++x) out[g_.mul(x, g)] = a[x];
    return out;
  }

  // --- Z(FG) level --------------------------------------------------------

  Vec central_zero() const { return Vec(class_count(), 0); }
  Vec class_sum(std::size_t k) const {
    Vec v = central_zero();
    v[k] = 1;
    return v;
  }

  std::vector<Vec> center_basis() const {
    std::vector<Vec> out;
    for (std::size_t k = 0; k < class_count(); ++k) out.push_back(class_sum(k));
    return out;
  }

  /// Class-sum coordinates to FG coordinates.
  Vec expand(std::span<const Residue> c) const {
    check_central(c);
    Vec v = zero();
    for (Elem x = 0; x < order(); ++x) v[x] = c[cd_.class_of[x]];
    return v;
  }

  /// FG coordinates to class-sum coordinates, or nullopt if not central.
  std::optional<Vec> restrict_to_center(std::span<const Residue> a) const {
    check_fg(a);
    Vec c = central_zero();
    for (std::size_t k = 0; k < class_count(); ++k) {
      const auto& cls = cd_.classes[k].elements;
      c[k] = a[cls[0]];
      for (Elem x : cls)
        if (a[x] != c[k]) return std::nullopt;
    }
    return c;
  }

  /// Product in Z(FG): (a b)_k = sum_x a(x) b(x^-1 r_k), r_k the class representative.
  Vec central_multiply(std::span<const Residue> a, std::span<const Residue> b) const {
    check_central(a);
    check_central(b);
    Vec out = central_zero();
    for (std::size_t k = 0; k < class_count(); ++k) {
      const Elem r = cd_.classes[k].representative;
      std::uint64_t acc = 0;
      for (Elem x = 0; x < order(); ++x) {
        const Residue ax = a[cd_.class_of[x]];
        if (!ax) continue;
        acc += std::uint64_t(ax) * b[cd_.class_of[g_.mul(g_.inv(x), r)]];
      }
      out[k] = static_cast<Residue>(acc % p_);
    }
    return out;
  }

  /// Matrix of z -> z s on Z(FG) (columns indexed by the input class).
  FpMatrix multiplication_matrix(std::span<const Residue> s) const {
    check_central(s);
    const std::size_t k = class_count();
    FpMatrix m(p_, k, k);
    std::vector<std::uint64_t> col(k);
    for (std::size_t j = 0; j < k; ++j) {
      std::fill(col.begin(), col.end(), 0);
      // (C_j^+ s)_i = sum_{x in C_j} s(x^-1 r_i)
      for (std::size_t i = 0; i < k; ++i) {
        const Elem r = cd_.classes[i].representative;
        for (Elem x : cd_.classes[j].elements) col[i] += s[cd_.class_of[g_.mul(g_.inv(x), r)]];
      }
      for (std::size_t i = 0; i < k; ++i) m.at(i, j) = static_cast<Residue>(col[i] % p_);
    }
    return m;
  }

  /// z -> z^p on Z(FG), which is F_p-linear in characteristic p.
  FpMatrix frobenius_matrix() const {
    const std::size_t k = class_count();
    FpMatrix m(p_, k, k);
    if (g_.is_abelian()) {
      // (sum a_g g)^p = sum a_g g^p.
      for (std::size_t j = 0; j < k; ++j) {
        const Elem x = cd_.classes[j].representative;
        m.at(cd_.class_of[g_.pow(x, p_)], j) = (m.at(cd_.class_of[g_.pow(x, p_)], j) + 1) % p_;
      }
      return m;
    }
    for (std::size_t j = 0; j < k; ++j) {
      Vec z = class_sum(j), r = class_sum(0);
      std::uint32_t e = p_;
      Vec base = z;
      while (e) {
        if (e & 1) r = central_multiply(r, base);
        e >>= 1;
        if (e) base = central_multiply(base, base);
      }
      for (std::size_t i = 0; i < k; ++i) m.at(i, j) = r[i];
    }
    return m;
  }

  std::uint32_t mod_p(std::int64_t v) const { return mod_reduce(v, p_); }

 private:
  void check_fg(std::span<const Residue> a) const {
    if (a.size() != order()) throw invalid_input("algebra element has wrong length for this group");
  }
  void check_central(std::span<const Residue> a) const {
    if (a.size() != class_count()) throw invalid_input("central element has wrong length for this group");
  }

  FiniteGroup g_;
  std::uint32_t p_;
  ClassData cd_;
};

// ---------------------------------------------------------------------------
// Radical and socle of Z(FG).

/// J(Z F_p G) as the kernel of the m-th power of the Frobenius map, p^m >= dim.
inline CentralSubspace nilradical_center(const GroupAlgebra& A) {
  const std::size_t k = A.class_count();
  FpMatrix f = A.frobenius_matrix();
  FpMatrix power = f;
  std::size_t reach = A.p();
  while (reach < k) {
    power = f * power;
    reach *= A.p();
  }
  return {kernel(power), SubspaceRole::jacobson_radical};
}

/// b_C = C^+ if p divides |C|, else C^+ - |C| 1, one per nontrivial class.
inline std::vector<Vec> jrad_basis_lemma25(const GroupAlgebra& A) {
  std::vector<Vec> out;
  for (std::size_t k = 1; k < A.class_count(); ++k) {
    Vec b = A.class_sum(k);
    const std::size_t size = A.classes()[k].size();
    if (size % A.p() != 0) b[0] = A.mod_p(-static_cast<std::int64_t>(size));
    out.push_back(std::move(b));
  }
  return out;
}

/// {z in Z(FG) : z s = 0 for all s in S}.
inline CentralSubspace annihilator_in_center(const GroupAlgebra& A, const std::vector<Vec>& S) {
  const std::size_t k = A.class_count();
  FpMatrix stacked(A.p(), 0, k);
  for (const auto& s : S) {
    FpMatrix m = A.multiplication_matrix(s);
    for (std::size_t r = 0; r < m.rows(); ++r) stacked.append_row(m.row(r));
    // Keep the stack small: only independent rows matter.
    if (stacked.rows() > 2 * k) stacked = rref(stacked).first;
  }
  return {kernel(stacked), SubspaceRole::annihilator};
}

inline std::vector<Vec> basis_vectors(const Subspace& s) {
  std::vector<Vec> out;
  for (std::size_t r = 0; r < s.dim(); ++r) out.push_back(s.basis().row_vec(r));
  return out;
}

inline CentralSubspace socle_center(const GroupAlgebra& A, const CentralSubspace& jac) {
  CentralSubspace s = annihilator_in_center(A, basis_vectors(jac.space));
  s.role = SubspaceRole::socle;
  return s;
}

inline CentralSubspace socle_center(const GroupAlgebra& A) { return socle_center(A, nilradical_center(A)); }

/// Closure of a central subspace under multiplication by all class sums.
inline bool is_ideal_of_center(const GroupAlgebra& A, const Subspace& s) {
  for (std::size_t j = 0; j < A.class_count(); ++j) {
    Vec c = A.class_sum(j);
    for (std::size_t r = 0; r < s.dim(); ++r)
      if (!s.contains(A.central_multiply(s.basis().row_vec(r), c))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// FG-level subspaces.

inline Subspace expand_subspace(const GroupAlgebra& A, const Subspace& central) {
  std::vector<Vec> rows;
  for (std::size_t r = 0; r < central.dim(); ++r) rows.push_back(A.expand(central.basis().row_vec(r)));
  return Subspace::span(A.p(), A.order(), rows);
}

/// (N)^+ FG for a normal subgroup N: spanned by the coset sums of N.
inline Subspace normal_sum_times_fg(const GroupAlgebra& A, const Subgroup& N) {
  const auto& g = A.group();
  std::vector<char> seen(g.order(), 0);
  std::vector<Vec> rows;
  for (Elem t = 0; t < g.order(); ++t) {
    if (seen[t]) continue;
    Vec v = A.zero();
    for (Elem n : N.elements()) {
      const Elem y = g.mul(n, t);
      seen[y] = 1;
      v[y] = 1;
    }
    rows.push_back(std::move(v));
  }
  return Subspace::span(A.p(), A.order(), rows);
}

inline Subspace gprime_plus_fg(const GroupAlgebra& A) { return normal_sum_times_fg(A, derived_subgroup(A.group())); }

/// Two-sided ideal test: g s and s g stay in s for each generator g.
inline bool is_ideal_in_fg(const GroupAlgebra& A, const Subspace& s) {
  for (Elem g : A.group().generators())
    for (std::size_t r = 0; r < s.dim(); ++r) {
      Vec v = s.basis().row_vec(r);
      if (!s.contains(A.left_translate(g, v)) || !s.contains(A.right_translate(v, g))) return false;
    }
  return true;
}

struct IdealVerdict {
  bool direct = false;
  bool criterion = false;
};

/// Both ways of deciding whether soc(ZFG) is an ideal of FG; they must agree.
inline IdealVerdict is_socle_ideal(const GroupAlgebra& A, const CentralSubspace& soc) {
  Subspace fg = expand_subspace(A, soc.space);
  IdealVerdict v;
  v.direct = is_ideal_in_fg(A, fg);
  v.criterion = gprime_plus_fg(A).contains(fg);
  require_consistent(v.direct == v.criterion,
                     "direct ideal test and the (G')^+ FG containment criterion disagree");
  return v;
}

inline IdealVerdict is_socle_ideal(const GroupAlgebra& A) { return is_socle_ideal(A, socle_center(A)); }

// ---------------------------------------------------------------------------
// Projections and class filters.

/// nu_N: FG -> F[G/N].
inline Vec project_nu(const QuotientMap& q, std::span<const Residue> a, std::uint32_t p) {
  if (a.size() != q.source.order()) throw invalid_input("element does not belong to the quotient's source group");
  std::vector<std::uint64_t> acc(q.target.order(), 0);
  for (Elem x = 0; x < q.source.order(); ++x) acc[q.proj[x]] += a[x];
  Vec out(q.target.order());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<Residue>(acc[i] % p);
  return out;
}

struct ClpPrimeResult {
  std::vector<std::size_t> classes;  // indices into A.classes()
  bool definitions_agree = true;
};

/// Nontrivial classes C with nu_{G''}(b_C) != 0, cross-checked against the
/// closed form "C not in G'' and p does not divide |C| / |C-bar|".
inline ClpPrimeResult clp_prime(const GroupAlgebra& A) {
  const auto& g = A.group();
  Subgroup d1 = derived_subgroup(g);
  Subgroup d2 = derived_of(g, d1);
  QuotientMap q = quotient(g, d2);
  ClassData dcd = conjugacy_class_data(q.target);
  auto basis = jrad_basis_lemma25(A);
  ClpPrimeResult out;
  for (std::size_t k = 1; k < A.class_count(); ++k) {
    const auto& cls = A.classes()[k];
    Vec nu = project_nu(q, A.expand(basis[k - 1]), A.p());
    const bool by_definition = std::any_of(nu.begin(), nu.end(), [](Residue r) { return r != 0; });
    const bool inside = std::all_of(cls.elements.begin(), cls.elements.end(), [&](Elem x) { return d2.contains(x); });
    const std::size_t image_size = dcd.classes[dcd.class_of[q.proj[cls.representative]]].size();
    const bool closed_form = !inside && (cls.size() / image_size) % A.p() != 0;
    if (by_definition != closed_form) out.definitions_agree = false;
    if (by_definition) out.classes.push_back(k);
  }
  return out;
}

struct CosetDecomposition {
  std::vector<Elem> coset_representatives;  // elements of H
  std::vector<std::size_t> dims;            // dim of soc intersected with F hP
  bool direct_sum = false;                  // dims add up to dim soc
};

/// soc(ZFG) cut into the coordinate blocks F hP, P the normal Sylow
/// p-subgroup and h running through a complement H.
inline CosetDecomposition socle_coset_decomposition(const GroupAlgebra& A, const CentralSubspace& soc,
                                                    const Subgroup& P, const Subgroup& H) {
  const auto& g = A.group();
  if (!P.is_normal() || P.order() * H.order() != g.order())
    throw unsupported_input("coset decomposition needs a normal Sylow subgroup with a complement");
  Subspace fg = expand_subspace(A, soc.space);
  CosetDecomposition out;
  std::size_t total = 0;
  for (Elem h : H.elements()) {
    std::vector<char> block(g.order(), 0);
    for (Elem x : P.elements()) block[g.mul(h, x)] = 1;
    // Combinations of the soc basis vanishing outside the block.
    FpMatrix m(A.p(), 0, fg.dim());
    Vec row(fg.dim());
    for (Elem y = 0; y < g.order(); ++y) {
      if (block[y]) continue;
      bool nonzero = false;
      for (std::size_t r = 0; r < fg.dim(); ++r) {
        row[r] = fg.basis().at(r, y);
        nonzero |= row[r] != 0;
      }
      if (nonzero) m.append_row(row);
    }
    const std::size_t d = fg.dim() - rank(m);
    out.coset_representatives.push_back(h);
    out.dims.push_back(d);
    total += d;
  }
  out.direct_sum = total == fg.dim();
  return out;
}

}  // namespace soclelab
