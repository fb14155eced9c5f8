#include <gtest/gtest.h>

#include <numeric>

#include "cimlab/group.hpp"

using namespace cimlab;

namespace {

std::size_t euler_phi(std::size_t n) {
  std::size_t r = 0;
  for (std::size_t k = 1; k <= n; ++k) r += std::gcd(k, n) == 1;
  return r;
}

// Aut(G) by trying every bijection fixing 0; only for tiny groups.
std::size_t brute_force_aut_count(FiniteGroup const& g) {
  std::vector<Element> f(g.order());
  std::iota(f.begin(), f.end(), Element{0});
  std::size_t count = 0;
  do {
    bool hom = true;
    for (Element a = 0; a < g.order() && hom; ++a) {
      for (Element b = 0; b < g.order() && hom; ++b) hom = f[g.mul(a, b)] == g.mul(f[a], f[b]);
    }
    count += hom;
  } while (std::next_permutation(f.begin() + 1, f.end()));
  return count;
}

}  // namespace

TEST(GroupCore, ConstructorsSatisfyAxioms) {
  for (auto const& g : {make_cyclic(1), make_cyclic(12), make_abelian({2, 2, 2}), make_abelian({3, 5}),
                        make_generalized_quaternion(8), make_generalized_quaternion(16), make_dihedral(4),
                        make_dihedral(3)}) {
    EXPECT_TRUE(check_group_axioms(g)) << g.name();
  }
}

TEST(GroupCore, IdentityIsZero) {
  auto g = make_generalized_quaternion(16);
  for (Element x = 0; x < g.order(); ++x) {
    EXPECT_EQ(g.mul(0, x), x);
    EXPECT_EQ(g.mul(x, g.inv(x)), 0u);
  }
}

TEST(GroupCore, CyclicAutomorphismCountIsEulerPhi) {
  for (std::size_t n = 1; n <= 20; ++n) EXPECT_EQ(automorphisms(make_cyclic(n)).size(), euler_phi(n)) << n;
}

TEST(GroupCore, AutomorphismsMatchBruteForce) {
  for (auto const& g : {make_abelian({2, 2}), make_abelian({2, 4}), make_abelian({2, 2, 2}),
                        make_generalized_quaternion(8), make_dihedral(4), make_dihedral(3), make_cyclic(8)}) {
    auto auts = automorphisms(g);
    EXPECT_EQ(auts.size(), brute_force_aut_count(g)) << g.name();
    for (auto const& a : auts) EXPECT_TRUE(is_group_isomorphism(g, g, a));
  }
}

TEST(GroupCore, KnownAutomorphismOrders) {
  EXPECT_EQ(automorphisms(make_abelian({2, 2, 2})).size(), 168u);
  EXPECT_EQ(automorphisms(make_generalized_quaternion(8)).size(), 24u);
  EXPECT_EQ(automorphisms(make_abelian({3, 3})).size(), 48u);
}

TEST(GroupCore, IsomorphismTest) {
  EXPECT_TRUE(is_isomorphic(make_abelian({3, 5}), make_cyclic(15)).has_value());
  EXPECT_FALSE(is_isomorphic(make_abelian({2, 4}), make_cyclic(8)).has_value());
  EXPECT_FALSE(is_isomorphic(make_generalized_quaternion(8), make_dihedral(4)).has_value());
  EXPECT_FALSE(is_isomorphic(make_generalized_quaternion(8), make_cyclic(8)).has_value());
  auto iso = is_isomorphic(make_abelian({3, 5}), make_cyclic(15));
  EXPECT_TRUE(is_group_isomorphism(make_abelian({3, 5}), make_cyclic(15), *iso));
}

TEST(GroupCore, QuaternionRelations) {
  auto q = make_generalized_quaternion(16);
  Element const c = 1, a = 8;
  EXPECT_EQ(element_order(q, c), 8u);
  EXPECT_EQ(q.mul(a, a), q.pow(c, 4));
  EXPECT_EQ(q.mul(q.mul(a, c), q.inv(a)), q.inv(c));
  auto stats = order_statistics(q);
  EXPECT_EQ(stats[2], 1u);
  EXPECT_EQ(stats[4], 10u);
}

TEST(GroupCore, SemidirectProduct) {
  auto k = make_cyclic(7);
  auto h = make_semidirect(k, 3, power_map(k, 2));
  EXPECT_EQ(h.order(), 21u);
  EXPECT_FALSE(is_abelian(h));
  EXPECT_TRUE(check_group_axioms(h));
  GroupIsomorphism bad;
  bad.images = {0, 3, 6, 2, 5, 1, 4};  // x -> 3x has order 6, not dividing 3
  EXPECT_THROW(make_semidirect(k, 3, bad), Error);
}

TEST(GroupCore, SubgroupsAndNormality) {
  auto d = make_dihedral(4);
  auto subs = all_subgroups(d);
  EXPECT_EQ(subs.size(), 10u);
  std::size_t normal = 0;
  for (auto const& s : subs) normal += is_normal(d, s);
  EXPECT_EQ(normal, 6u);
  auto q = make_generalized_quaternion(8);
  for (auto const& s : all_subgroups(q)) EXPECT_TRUE(is_normal(q, s));
}

TEST(GroupCore, SubgroupAsGroupEmbeds) {
  auto q = make_generalized_quaternion(16);
  auto sub = generated_subgroup(q, {Element{8}, q.pow(1, 2)});
  auto [g, emb] = subgroup_as_group(q, sub, "Q8");
  EXPECT_EQ(g.order(), 8u);
  EXPECT_TRUE(is_isomorphic(g, make_generalized_quaternion(8)).has_value());
  for (Element x = 0; x < g.order(); ++x) {
    for (Element y = 0; y < g.order(); ++y) EXPECT_EQ(emb[g.mul(x, y)], q.mul(emb[x], emb[y]));
  }
}

TEST(GroupCore, ClassM) {
  EXPECT_TRUE(in_class_m(make_cyclic(15)));
  EXPECT_TRUE(in_class_m(make_abelian({3, 2, 2})));
  EXPECT_TRUE(in_class_m(make_abelian({5, 4})));
  EXPECT_TRUE(in_class_m(direct_product(make_cyclic(3), make_generalized_quaternion(8))));
  EXPECT_FALSE(in_class_m(make_cyclic(9)));
  EXPECT_FALSE(in_class_m(make_cyclic(8)));
  EXPECT_FALSE(in_class_m(make_dihedral(3)));
}

TEST(GroupCore, AutomorphismFromGenerators) {
  auto g = make_abelian({2, 2});
  std::vector<Element> gens{1, 2}, imgs{2, 3};
  auto a = automorphism_from_generators(g, gens, imgs);
  ASSERT_TRUE(a.has_value());
  EXPECT_EQ((*a)(3), 1u);
  std::vector<Element> bad{1, 1};
  EXPECT_FALSE(automorphism_from_generators(g, gens, bad).has_value());
}

TEST(GroupCore, InvalidOrders) {
  EXPECT_THROW(make_cyclic(0), Error);
  EXPECT_THROW(make_generalized_quaternion(12), Error);
}
