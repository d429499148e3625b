#include <gtest/gtest.h>

#include <random>

#include "soclelab/constructions.hpp"
#include "soclelab/group_algebra.hpp"

using namespace soclelab;

namespace {

struct Case {
  const char* name;
  FiniteGroup g;
  std::uint32_t p;
};

std::vector<Case> small_cases() {
  return {{"S3 p=3", symmetric_group(3), 3},  {"S3 p=2", symmetric_group(3), 2},
          {"D8 p=2", dihedral_group(8), 2},   {"Q8 p=2", quaternion_group(8), 2},
          {"A4 p=2", agl1_group(4), 2},       {"A4 p=3", agl1_group(4), 3},
          {"S4 p=2", symmetric_group(4), 2},  {"S4 p=3", symmetric_group(4), 3},
          {"SL2(3) p=2", sl2_group(3), 2},    {"D10 p=5", dihedral_group(10), 5},
          {"C6 p=2", cyclic_group(6), 2},     {"D12 p=3", dihedral_group(12), 3},
          {"Dic3 p=2", dicyclic_group(3), 2}, {"AGL(1,5) p=5", agl1_group(5), 5}};
}

Vec naive_product(const FiniteGroup& g, const Vec& a, const Vec& b, std::uint32_t p) {
  Vec out(g.order(), 0);
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem y = 0; y < g.order(); ++y) out[g.mul(x, y)] = (out[g.mul(x, y)] + a[x] * b[y]) % p;
  return out;
}

Vec random_vec(std::mt19937& rng, std::size_t n, std::uint32_t p) {
  Vec v(n);
  for (auto& x : v) x = rng() % p;
  return v;
}

// Every element of Z(FG) in class-sum coordinates.
std::vector<Vec> all_central(const GroupAlgebra& A) {
  std::vector<Vec> out{A.central_zero()};
  for (std::size_t i = 0; i < A.class_count(); ++i) {
    std::vector<Vec> next;
    for (const auto& v : out)
      for (Residue a = 0; a < A.p(); ++a) {
        Vec w = v;
        w[i] = a;
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  return out;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Residue r) { return r == 0; });
}

}  // namespace

TEST(GroupAlgebra, ProductMatchesNaiveConvolution) {
  std::mt19937 rng(3);
  for (const auto& c : small_cases()) {
    GroupAlgebra A(c.g, c.p);
    for (int t = 0; t < 5; ++t) {
      Vec a = random_vec(rng, c.g.order(), c.p), b = random_vec(rng, c.g.order(), c.p);
      EXPECT_EQ(A.multiply(a, b), naive_product(c.g, a, b, c.p)) << c.name;
      Vec za = random_vec(rng, A.class_count(), c.p), zb = random_vec(rng, A.class_count(), c.p);
      EXPECT_EQ(A.expand(A.central_multiply(za, zb)), naive_product(c.g, A.expand(za), A.expand(zb), c.p)) << c.name;
    }
  }
}

TEST(GroupAlgebra, RadicalIsNilpotentElements) {
  for (const auto& c : small_cases()) {
    GroupAlgebra A(c.g, c.p);
    if (std::pow(double(c.p), double(A.class_count())) > 5000) continue;
    CentralSubspace J = nilradical_center(A);
    for (const auto& z : all_central(A)) {
      Vec w = z;
      for (std::size_t i = 0; i < A.class_count() && !is_zero(w); ++i) w = A.central_multiply(w, z);
      EXPECT_EQ(is_zero(w), J.space.contains(z)) << c.name;
    }
  }
}

TEST(GroupAlgebra, SocleIsSumOfMinimalIdeals) {
  for (const auto& c : small_cases()) {
    GroupAlgebra A(c.g, c.p);
    if (c.g.order() > 24 || std::pow(double(c.p), double(A.class_count())) > 5000) continue;
    const auto basis = A.center_basis();
    std::vector<Subspace> principal;
    for (const auto& z : all_central(A)) {
      if (is_zero(z)) continue;
      std::vector<Vec> gens;
      for (const auto& b : basis) gens.push_back(A.central_multiply(z, b));
      Subspace s = Subspace::span(c.p, A.class_count(), gens);
      if (std::none_of(principal.begin(), principal.end(), [&](const Subspace& o) { return o == s; }))
        principal.push_back(std::move(s));
    }
    Subspace sum = Subspace::zero(c.p, A.class_count());
    for (const auto& s : principal) {
      const bool minimal = std::none_of(principal.begin(), principal.end(),
                                        [&](const Subspace& o) { return o.dim() < s.dim() && s.contains(o); });
      if (minimal) sum = sum.sum(s);
    }
    EXPECT_EQ(sum, socle_center(A).space) << c.name;
  }
}

TEST(GroupAlgebra, IdealTestAgreesWithFullClosure) {
  for (const auto& c : small_cases()) {
    GroupAlgebra A(c.g, c.p);
    Subspace fg = expand_subspace(A, socle_center(A).space);
    bool closed = true;
    for (Elem g = 0; g < c.g.order(); ++g)
      for (std::size_t r = 0; r < fg.dim(); ++r) {
        Vec v = fg.basis().row_vec(r);
        closed = closed && fg.contains(A.left_translate(g, v)) && fg.contains(A.right_translate(v, g));
      }
    IdealVerdict v = is_socle_ideal(A);
    EXPECT_EQ(v.direct, closed) << c.name;
    EXPECT_EQ(v.direct, v.criterion) << c.name;
  }
}

TEST(GroupAlgebra, SL2Example) {
  GroupAlgebra A(sl2_group(3), 2);
  CentralSubspace J = nilradical_center(A), soc = socle_center(A, J);
  EXPECT_EQ(A.class_count(), 7u);
  EXPECT_EQ(J.dim(), 6u);
  EXPECT_EQ(soc.dim(), 3u);
  IdealVerdict v = is_socle_ideal(A, soc);
  EXPECT_TRUE(v.direct);
  EXPECT_TRUE(v.criterion);
  SylowHall sh = sylow_and_hall(A.group(), 2);
  CosetDecomposition cd = socle_coset_decomposition(A, soc, sh.sylow_p, *sh.hall_complement);
  EXPECT_EQ(cd.dims, (std::vector<std::size_t>{1, 1, 1}));
  EXPECT_TRUE(cd.direct_sum);
  EXPECT_EQ(Subspace::span(2, 7, jrad_basis_lemma25(A)), J.space);
}

TEST(GroupAlgebra, AffineGroups) {
  for (std::uint64_t q : {3u, 4u, 5u, 7u, 8u, 9u}) {
    GroupAlgebra A(agl1_group(q), prime_power(q)->first);
    CentralSubspace soc = socle_center(A);
    EXPECT_EQ(soc.dim(), q - 1);
    EXPECT_TRUE(is_socle_ideal(A, soc).direct);
  }
}

TEST(GroupAlgebra, FrobeniusMatrixFastPath) {
  // Abelian groups use the coefficientwise p-power map; compare with repeated products.
  for (std::uint32_t p : {2u, 3u}) {
    GroupAlgebra A(direct_product({cyclic_group(6), cyclic_group(2)}), p);
    FpMatrix f = A.frobenius_matrix();
    std::mt19937 rng(p);
    Vec z = random_vec(rng, A.class_count(), p);
    Vec w = A.basis_element(0);
    w = A.restrict_to_center(w).value();
    for (std::uint32_t i = 0; i < p; ++i) w = A.central_multiply(w, z);
    EXPECT_EQ(f.apply(z), w);
  }
}

TEST(GroupAlgebra, ClpPrimeDefinitionsAgree) {
  for (const FiniteGroup& g : {sl2_group(3), fpf_extension(extraspecial_group(3, true), 8),
                               fpf_extension(extraspecial_group(3, true), 4), agl1_group(8)}) {
    const std::uint32_t p = prime_divisors(derived_subgroup(g).order()).front();
    EXPECT_TRUE(clp_prime(GroupAlgebra(g, p)).definitions_agree);
  }
}

TEST(GroupAlgebra, CoprimeDirectFactorDoesNotChangeVerdict) {
  for (const FiniteGroup& g0 : {sl2_group(3), agl1_group(4)}) {
    const bool base = is_socle_ideal(GroupAlgebra(g0, 2)).direct;
    for (std::size_t m : {3u, 5u, 7u})
      EXPECT_EQ(is_socle_ideal(GroupAlgebra(direct_product({g0, cyclic_group(m)}), 2)).direct, base);
  }
}
