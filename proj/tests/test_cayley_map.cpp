#include <gtest/gtest.h>

#include "cimlab/cayley_map.hpp"
#include "cimlab/enumerate.hpp"

using namespace cimlab;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (Error const& e) {
    return e.kind();
  }
  return ErrorKind::parse;
}

}  // namespace

TEST(CayleyMap, CanonicalPhase) {
  auto z8 = share(make_cyclic(8));
  CayleyMap m(z8, {5, 7, 1, 3});
  EXPECT_EQ(m.rotation(), (std::vector<Element>{1, 3, 5, 7}));
  EXPECT_EQ(m, CayleyMap(z8, {1, 3, 5, 7}));
  EXPECT_NE(m, CayleyMap(z8, {1, 7, 5, 3}));
  EXPECT_EQ(m.rho(7), 1u);
  EXPECT_EQ(m.rho_inv(1), 7u);
  EXPECT_EQ(m.rho_pow(3, 6), 7u);
}

TEST(CayleyMap, RejectsBadConnectionSets) {
  auto z8 = share(make_cyclic(8));
  EXPECT_EQ(kind_of([&] { CayleyMap(z8, {0, 1, 7}); }), ErrorKind::identity_in_connection_set);
  EXPECT_EQ(kind_of([&] { CayleyMap(z8, {1, 2, 7}); }), ErrorKind::not_symmetric);
  EXPECT_EQ(kind_of([&] { CayleyMap(z8, {1, 7, 1}); }), ErrorKind::duplicate_entry);
  EXPECT_EQ(kind_of([&] { CayleyMap(z8, {1, 9}); }), ErrorKind::invalid_argument);
}

TEST(CayleyMap, Connectivity) {
  auto z8 = share(make_cyclic(8));
  EXPECT_TRUE(is_connected(CayleyMap(z8, {1, 7})));
  EXPECT_FALSE(is_connected(CayleyMap(z8, {2, 6})));
  EXPECT_FALSE(is_connected(CayleyMap(z8, {4})));
}

TEST(CayleyMap, BalancedAndAntibalanced) {
  auto z8 = share(make_cyclic(8));
  EXPECT_TRUE(is_antibalanced(CayleyMap(z8, {1, 3, 5, 7})));
  EXPECT_FALSE(is_balanced(CayleyMap(z8, {1, 3, 5, 7})));
  EXPECT_TRUE(is_balanced(CayleyMap(z8, {1, 3, 7, 5})));
  EXPECT_FALSE(is_antibalanced(CayleyMap(z8, {1, 3, 7, 5})));
}

TEST(CayleyMap, BalancedCheckAgainstDefinition) {
  auto h = share(make_dihedral(4));
  for (auto const& s : symmetric_connection_sets(*h, 4)) {
    for_each_rotation(std::span<Element const>(s), [&](std::span<Element const> rot) {
      CayleyMap m(h, std::vector<Element>(rot.begin(), rot.end()));
      bool bal = true, anti = true;
      for (Element x : m.rotation()) {
        bal = bal && m.rho(h->inv(x)) == h->inv(m.rho(x));
        anti = anti && m.rho(h->inv(x)) == h->inv(m.rho_inv(x));
      }
      EXPECT_EQ(is_balanced(m), bal);
      EXPECT_EQ(is_antibalanced(m), anti);
      return true;
    });
  }
}

TEST(CayleyMap, ConnectionSetEnumerationCount) {
  // Z_8 inverse classes: {1,7}, {2,6}, {3,5}, {4}: 15 nonempty unions.
  auto z8 = make_cyclic(8);
  EXPECT_EQ(symmetric_connection_sets(z8, 7).size(), 15u);
  EXPECT_EQ(symmetric_connection_sets(z8, 2).size(), 4u);
  EXPECT_EQ(rotation_count(1), 1u);
  EXPECT_EQ(rotation_count(2), 1u);
  EXPECT_EQ(rotation_count(7), 720u);
}

TEST(CayleyMap, RotationRankMatchesEnumerationOrder) {
  std::vector<Element> set{1, 2, 3, 4, 5};
  std::uint64_t i = 0;
  for_each_rotation(std::span<Element const>(set), [&](std::span<Element const> rot) {
    EXPECT_EQ(rotation_rank(rot), i++);
    return true;
  });
  EXPECT_EQ(i, 24u);
}

TEST(CayleyMap, TernaryRelationSize) {
  auto z8 = share(make_cyclic(8));
  CayleyMap m(z8, {1, 3, 5, 7});
  auto r = ternary_relation(m);
  EXPECT_TRUE(r.contains({0, 1, 3}));
  EXPECT_FALSE(r.contains({0, 3, 1}));
}

TEST(CayleyMap, GroupAutomorphismMovesMap) {
  auto z8 = share(make_cyclic(8));
  CayleyMap m(z8, {1, 3, 5, 7});
  auto m3 = apply_group_automorphism(m, power_map(*z8, 3));
  EXPECT_EQ(m3.rotation(), (std::vector<Element>{1, 7, 5, 3}));
}

TEST(CayleyMap, SkewMorphisms) {
  auto z8 = make_cyclic(8);
  for (auto const& a : automorphisms(z8)) EXPECT_TRUE(is_skew_morphism(z8, Permutation(a.images)));
  EXPECT_FALSE(is_skew_morphism(z8, Permutation({0, 2, 1, 3, 4, 5, 6, 7})));
  // x -> 3x on even x, x -> 7x on odd x... on Z_8 the map 1 <-> 5 fixing the rest is skew.
  EXPECT_TRUE(is_skew_morphism(z8, Permutation({0, 5, 2, 7, 4, 1, 6, 3})));
}

TEST(CayleyMap, PullBackAlongAutomorphismMatchesApply) {
  auto z8 = share(make_cyclic(8));
  CayleyMap m(z8, {1, 3, 5, 7});
  auto a = power_map(*z8, 5);
  // pull_back uses theta^-1; 5 is its own inverse mod 8.
  EXPECT_EQ(pull_back(m, Permutation(a.images)), apply_group_automorphism(m, a));
}
