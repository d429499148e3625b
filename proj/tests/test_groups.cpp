#include <gtest/gtest.h>

#include <map>
#include <set>

#include "soclelab/constructions.hpp"
#include "soclelab/isomorphism.hpp"

using namespace soclelab;

namespace {

// Classes by conjugating every element by every element.
std::vector<std::vector<Elem>> brute_classes(const FiniteGroup& g) {
  std::vector<std::vector<Elem>> out;
  std::vector<char> done(g.order(), 0);
  for (Elem x = 0; x < g.order(); ++x) {
    if (done[x]) continue;
    std::set<Elem> cls;
    for (Elem y = 0; y < g.order(); ++y) cls.insert(g.mul(g.mul(y, x), g.inv(y)));
    for (Elem c : cls) done[c] = 1;
    out.emplace_back(cls.begin(), cls.end());
  }
  return out;
}

std::vector<std::size_t> class_sizes(const FiniteGroup& g) {
  std::vector<std::size_t> s;
  for (const auto& c : conjugacy_classes(g)) s.push_back(c.size());
  return s;
}

void expect_group_axioms(const FiniteGroup& g) {
  const std::size_t n = g.order();
  for (Elem a = 0; a < n; ++a) {
    EXPECT_EQ(g.mul(0, a), a);
    EXPECT_EQ(g.mul(a, g.inv(a)), 0u);
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; c += 1 + n / 16) EXPECT_EQ(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
  }
}

// 2x2 matrices over F_3 with determinant 1, as tuples (a, b, c, d).
using Mat = std::array<int, 4>;
Mat mat_mul(const Mat& x, const Mat& y) {
  return {(x[0] * y[0] + x[1] * y[2]) % 3, (x[0] * y[1] + x[1] * y[3]) % 3, (x[2] * y[0] + x[3] * y[2]) % 3,
          (x[2] * y[1] + x[3] * y[3]) % 3};
}

}  // namespace

TEST(Groups, ClassesMatchBruteForce) {
  for (const FiniteGroup& g : {quaternion_group(8), sl2_group(3), dihedral_group(12), agl1_group(8),
                               symmetric_group(4), alternating_group(5), extraspecial_group(3, false)}) {
    auto cd = conjugacy_class_data(g);
    auto brute = brute_classes(g);
    std::set<std::vector<Elem>> a, b(brute.begin(), brute.end());
    for (const auto& c : cd.classes) a.insert(c.elements);
    EXPECT_EQ(a, b);
    EXPECT_EQ(cd.classes[0].elements, std::vector<Elem>{0});
    for (std::size_t k = 0; k + 1 < cd.classes.size(); ++k) {
      const auto& x = cd.classes[k];
      const auto& y = cd.classes[k + 1];
      EXPECT_TRUE(x.size() < y.size() || (x.size() == y.size() && x.representative < y.representative));
      EXPECT_EQ(x.representative, x.elements.front());
    }
    for (const auto& c : cd.classes) EXPECT_EQ(g.order() % c.size(), 0u);
  }
}

TEST(Groups, KnownClassSizes) {
  EXPECT_EQ(class_sizes(quaternion_group(8)), (std::vector<std::size_t>{1, 1, 2, 2, 2}));
  EXPECT_EQ(class_sizes(sl2_group(3)), (std::vector<std::size_t>{1, 1, 4, 4, 4, 4, 6}));
  EXPECT_EQ(class_sizes(cyclic_group(6)), std::vector<std::size_t>(6, 1));
  const FiniteGroup a4 = agl1_group(4);
  EXPECT_EQ(class_sizes(a4), (std::vector<std::size_t>{1, 3, 4, 4}));
  EXPECT_EQ(derived_subgroup(a4).order(), 4u);
  EXPECT_TRUE(is_frobenius_with_kernel(a4, derived_subgroup(a4)));
}

TEST(Groups, SmallFamilies) {
  const FiniteGroup sl = sl2_group(3);
  EXPECT_EQ(sl.order(), 24u);
  EXPECT_EQ(center(sl).order(), 2u);
  auto dq = as_group(sl, derived_subgroup(sl));
  EXPECT_TRUE(find_isomorphism(dq.group, quaternion_group(8)).has_value());
  const FiniteGroup q8 = extraspecial_group(2, false);
  EXPECT_TRUE(find_isomorphism(q8, quaternion_group(8)).has_value());
  EXPECT_EQ(center(q8).order(), 2u);
  EXPECT_FALSE(find_isomorphism(dihedral_group(8), quaternion_group(8)).has_value());
  EXPECT_EQ(agl1_group(8).order(), 56u);
  EXPECT_EQ(central_product_of_centers(sl, sl).order(), 288u);
  EXPECT_EQ(alternating_group(5).order(), 60u);
  EXPECT_THROW(cyclic_group(3000), unsupported_input);
  EXPECT_THROW(agl1_group(6), invalid_input);
  for (const FiniteGroup& g : {sl, agl1_group(9), central_product_of_centers(sl, quaternion_group(8)),
                               classtwo_group(8, 1), fpf_extension(extraspecial_group(3, true), 8)})
    expect_group_axioms(g);
}

TEST(Groups, PermutationClosure) {
  // (1 2 3 4) and (1 3) on four points.
  PermGroup d = permutation_closure({{1, 2, 3, 0}, {2, 1, 0, 3}}, 4);
  EXPECT_EQ(d.group.order(), 8u);
  EXPECT_TRUE(find_isomorphism(d.group, dihedral_group(8)).has_value());
  EXPECT_THROW(permutation_closure({{0, 0, 1}}, 3), invalid_input);
  EXPECT_THROW(permutation_closure({{1, 2, 3, 4, 5, 6, 7, 0}, {1, 0, 2, 3, 4, 5, 6, 7}}, 8, GroupOptions{100}),
               unsupported_input);
}

TEST(Groups, SL2ThroughMatrixPermutations) {
  std::vector<Mat> mats;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d)
          if (((a * d - b * c) % 3 + 3) % 3 == 1) mats.push_back({a, b, c, d});
  ASSERT_EQ(mats.size(), 24u);
  std::map<Mat, std::uint32_t> index;
  for (std::uint32_t i = 0; i < mats.size(); ++i) index[mats[i]] = i;
  auto right_mult = [&](const Mat& m) {
    Perm p(mats.size());
    for (std::size_t i = 0; i < mats.size(); ++i) p[i] = index.at(mat_mul(mats[i], m));
    return p;
  };
  PermGroup g = permutation_closure({right_mult({1, 1, 0, 1}), right_mult({0, 2, 1, 0})}, mats.size());
  EXPECT_EQ(g.group.order(), 24u);
  EXPECT_TRUE(find_isomorphism(g.group, sl2_group(3)).has_value());
}

TEST(Groups, SemidirectProducts) {
  const FiniteGroup c3 = cyclic_group(3), c2 = cyclic_group(2);
  std::vector<std::vector<Elem>> invert{{0, 1, 2}, {0, 2, 1}};
  FiniteGroup s3 = semidirect_product(c3, c2, invert);
  EXPECT_TRUE(find_isomorphism(s3, symmetric_group(3)).has_value());

  const FiniteGroup v4 = elementary_abelian_group(2, 2);
  // Find an automorphism of order 3 of V4 by search.
  std::vector<Elem> cyc;
  for_each_automorphism(v4, [&](const std::vector<Elem>& a) {
    if (automorphism_power(a, 3) == automorphism_power(a, 0) && automorphism_power(a, 1) != automorphism_power(a, 0)) {
      cyc = a;
      return true;
    }
    return false;
  });
  ASSERT_FALSE(cyc.empty());
  std::vector<std::vector<Elem>> act{automorphism_power(cyc, 0), automorphism_power(cyc, 1), automorphism_power(cyc, 2)};
  FiniteGroup a4 = semidirect_product(v4, c3, act);
  EXPECT_EQ(class_sizes(a4), (std::vector<std::size_t>{1, 3, 4, 4}));

  std::vector<std::vector<Elem>> trivial(2, std::vector<Elem>{0, 1, 2});
  EXPECT_EQ(semidirect_product(c3, c2, trivial).order(), 6u);
  EXPECT_TRUE(semidirect_product(c3, c2, trivial).is_abelian());
  std::vector<std::vector<Elem>> bad{{0, 1, 2}, {0, 0, 1}};
  EXPECT_THROW(semidirect_product(c3, c2, bad), invalid_input);
}

TEST(Groups, TableValidation) {
  EXPECT_EQ(FiniteGroup::from_table({{0, 1}, {1, 0}}).order(), 2u);
  // Identity at index 1 gets moved to index 0.
  FiniteGroup g = FiniteGroup::from_table({{2, 0, 1}, {0, 1, 2}, {1, 2, 0}});
  EXPECT_EQ(g.mul(0, 2), 2u);
  EXPECT_EQ(g.element_order(1), 3u);
  EXPECT_THROW(FiniteGroup::from_table({{0, 1}, {0, 1}}), invalid_input);
  // Latin square without associativity.
  EXPECT_THROW(FiniteGroup::from_table({{0, 1, 2, 3, 4},
                                        {1, 0, 3, 4, 2},
                                        {2, 4, 0, 1, 3},
                                        {3, 2, 4, 0, 1},
                                        {4, 3, 1, 2, 0}}),
               invalid_input);
}

TEST(Groups, SubgroupsAndQuotients) {
  const FiniteGroup sl = sl2_group(3);
  QuotientMap q = quotient(sl, center(sl));
  EXPECT_TRUE(find_isomorphism(q.target, agl1_group(4)).has_value());
  SylowHall sh = sylow_and_hall(sl, 2);
  EXPECT_EQ(sh.sylow_p.order(), 8u);
  EXPECT_TRUE(sh.sylow_p.is_normal());
  ASSERT_TRUE(sh.hall_complement.has_value());
  EXPECT_EQ(sh.hall_complement->order(), 3u);

  const FiniteGroup g = direct_product({sl, cyclic_group(3)});
  CoresResiduals cr = cores_and_residuals(g, 2);
  EXPECT_EQ(cr.o_p_prime.order(), 3u);
  EXPECT_EQ(cr.o_sup_p.order(), 72u);  // SL2(3) is generated by its 3-elements
  for (const auto& s : {derived_subgroup(g), center(g), cr.o_p, cr.o_p_prime, cr.o_sup_p_prime})
    EXPECT_EQ(g.order() % s.order(), 0u);
  EXPECT_TRUE(is_camina(quaternion_group(8)));
  EXPECT_FALSE(is_camina(dihedral_group(12)));
}
