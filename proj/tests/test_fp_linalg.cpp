#include <gtest/gtest.h>

#include <random>
#include <set>

#include "soclelab/finite_field.hpp"
#include "soclelab/fp_linalg.hpp"

using namespace soclelab;

namespace {

// Every vector of F_p^n, as residue vectors.
std::vector<Vec> all_vectors(std::uint32_t p, std::size_t n) {
  std::vector<Vec> out{Vec(n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Vec> next;
    for (const auto& v : out)
      for (Residue a = 0; a < p; ++a) {
        Vec w = v;
        w[i] = a;
        next.push_back(w);
      }
    out = std::move(next);
  }
  return out;
}

std::set<Vec> brute_span(std::uint32_t p, std::size_t n, const std::vector<Vec>& gens) {
  std::set<Vec> out{Vec(n, 0)};
  for (const auto& g : gens) {
    std::set<Vec> next;
    for (const auto& v : out)
      for (Residue a = 0; a < p; ++a) {
        Vec w = v;
        for (std::size_t i = 0; i < n; ++i) w[i] = (w[i] + a * g[i]) % p;
        next.insert(w);
      }
    out = std::move(next);
  }
  return out;
}

std::vector<Vec> rows_of(const Subspace& s) {
  std::vector<Vec> out;
  for (std::size_t r = 0; r < s.dim(); ++r) out.push_back(s.basis().row_vec(r));
  return out;
}

FpMatrix random_matrix(std::mt19937& rng, std::uint32_t p, std::size_t r, std::size_t c) {
  FpMatrix m(p, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rng() % p;
  return m;
}

}  // namespace

TEST(FpLinalg, RejectsCompositeModulus) {
  EXPECT_THROW(FpMatrix(4, 1, 1), invalid_input);
  EXPECT_THROW(FpMatrix(1, 1, 1), invalid_input);
}

TEST(FpLinalg, RrefOfKnownMatrix) {
  auto m = FpMatrix::from_rows(5, {{1, 0, 2}, {0, 1, 3}, {1, 1, 1}}, 3);
  auto [r, rk] = rref(m);
  EXPECT_EQ(rk, 3u);
  EXPECT_EQ(r, FpMatrix::identity(5, 3));
  auto singular = FpMatrix::from_rows(3, {{1, 2, 0}, {2, 1, 0}}, 3);
  EXPECT_EQ(rank(singular), 1u);
}

TEST(FpLinalg, KernelMatchesEnumeration) {
  std::mt19937 rng(7);
  for (std::uint32_t p : {2u, 3u, 5u})
    for (int trial = 0; trial < 20; ++trial) {
      FpMatrix m = random_matrix(rng, p, 1 + trial % 3, 4);
      Subspace k = kernel(m);
      std::size_t count = 0;
      for (const auto& v : all_vectors(p, 4)) {
        Vec mv = m.apply(v);
        const bool zero = std::all_of(mv.begin(), mv.end(), [](Residue x) { return x == 0; });
        count += zero;
        EXPECT_EQ(zero, k.contains(v));
      }
      std::size_t expect = 1;
      for (std::size_t i = 0; i < k.dim(); ++i) expect *= p;
      EXPECT_EQ(count, expect);
    }
}

TEST(FpLinalg, IntersectionAndSumMatchEnumeration) {
  std::mt19937 rng(11);
  for (std::uint32_t p : {2u, 3u})
    for (int trial = 0; trial < 15; ++trial) {
      std::vector<Vec> a, b;
      for (int i = 0; i < 2; ++i) {
        a.push_back(random_matrix(rng, p, 1, 4).row_vec(0));
        b.push_back(random_matrix(rng, p, 1, 4).row_vec(0));
      }
      Subspace sa = Subspace::span(p, 4, a), sb = Subspace::span(p, 4, b);
      auto ea = brute_span(p, 4, a), eb = brute_span(p, 4, b);
      auto rel = subspace_algebra(sa, sb);
      for (const auto& v : all_vectors(p, 4)) {
        EXPECT_EQ(rel.intersection.contains(v), ea.count(v) && eb.count(v));
        EXPECT_EQ(sa.contains(v), ea.count(v) == 1);
      }
      std::vector<Vec> both = a;
      both.insert(both.end(), b.begin(), b.end());
      EXPECT_EQ(brute_span(p, 4, both).size(), brute_span(p, 4, rows_of(rel.sum)).size());
    }
}

TEST(FpLinalg, SpanIsCanonical) {
  auto s1 = Subspace::span(3, 3, {{1, 2, 0}, {0, 1, 1}});
  auto s2 = Subspace::span(3, 3, {{1, 0, 1}, {2, 1, 0}, {1, 2, 0}});
  EXPECT_EQ(s1, s2);
}

TEST(FiniteField, SmallestIrreducibles) {
  EXPECT_EQ(GaloisField::smallest_irreducible(2, 2), (std::vector<Residue>{1, 1, 1}));
  EXPECT_EQ(GaloisField::smallest_irreducible(2, 3), (std::vector<Residue>{1, 1, 0, 1}));
  EXPECT_EQ(GaloisField::smallest_irreducible(3, 2), (std::vector<Residue>{1, 0, 1}));
}

TEST(FiniteField, AxiomsByEnumeration) {
  for (std::uint64_t q : {4u, 8u, 9u, 16u}) {
    GaloisField f = GaloisField::of_order(q);
    for (std::uint32_t a = 0; a < q; ++a) {
      if (a) {
        EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
      }
      EXPECT_EQ(f.add(a, f.neg(a)), 0u);
      for (std::uint32_t b = 0; b < q; ++b)
        for (std::uint32_t c = 0; c < q; ++c) {
          EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
          EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        }
    }
    const auto g = f.primitive_element();
    std::set<std::uint32_t> powers;
    for (std::uint32_t k = 0; k + 1 < q; ++k) powers.insert(f.pow(g, k));
    EXPECT_EQ(powers.size(), q - 1);
  }
  EXPECT_THROW(GaloisField::of_order(6), invalid_input);
}
