#include <gtest/gtest.h>

#include "cimlab/perm.hpp"

using namespace cimlab;

namespace {

PermutationGroup symmetric4() {
  return closure({Permutation({1, 2, 3, 0}), Permutation({1, 0, 2, 3})}, 4, 100);
}

}  // namespace

TEST(Permutation, CompositionAppliesRightFactorFirst) {
  Permutation a({1, 2, 0}), b({0, 2, 1});
  Permutation ab = a * b;
  for (Element x = 0; x < 3; ++x) EXPECT_EQ(ab(x), a(b(x)));
  EXPECT_TRUE((a * a.inverse()).is_identity());
  EXPECT_EQ(a.order(), 3u);
  EXPECT_EQ(a.pow(-1), a.inverse());
  EXPECT_EQ(a.pow(4), a);
}

TEST(Permutation, RejectsNonBijections) {
  EXPECT_THROW(Permutation({0, 0, 1}), Error);
  EXPECT_THROW(Permutation({0, 3, 1}), Error);
}

TEST(PermutationGroup, ClosureOrder) {
  EXPECT_EQ(symmetric4().order(), 24u);
  EXPECT_EQ(closure({Permutation({1, 2, 3, 0})}, 4, 100).order(), 4u);
  EXPECT_THROW(closure({Permutation({1, 2, 3, 0}), Permutation({1, 0, 2, 3})}, 4, 10), Error);
}

TEST(PermutationGroup, LeftRegularRepresentationIsRegular) {
  for (auto const& h : {make_cyclic(8), make_generalized_quaternion(8), make_dihedral(5)}) {
    auto r = left_regular_representation(h);
    EXPECT_EQ(r.order(), h.order());
    EXPECT_TRUE(is_regular(r));
    EXPECT_TRUE(is_isomorphic(as_abstract_group(r), h).has_value());
  }
}

TEST(PermutationGroup, StabilizerAndOrbit) {
  auto s4 = symmetric4();
  EXPECT_TRUE(is_transitive(s4));
  EXPECT_EQ(orbit(s4, 2).size(), 4u);
  auto st = point_stabilizer(s4, 0);
  EXPECT_EQ(st.order(), 6u);
  for (auto const& p : st.elements()) EXPECT_EQ(p(0), 0u);
}

TEST(PermutationGroup, RegularSubgroupsOfS4) {
  auto s4 = symmetric4();
  auto klein = regular_subgroups_isomorphic_to(s4, make_abelian({2, 2}));
  EXPECT_EQ(klein.size(), 1u);
  EXPECT_TRUE(is_normal_subgroup(s4, klein[0]));
  auto cyc = regular_subgroups_isomorphic_to(s4, make_cyclic(4));
  ASSERT_EQ(cyc.size(), 3u);
  for (auto const& c : cyc) {
    EXPECT_TRUE(is_cyclic_group(c));
    auto g = are_conjugate_subgroups(s4, c, cyc[0]);
    ASSERT_TRUE(g.has_value());
    for (auto const& x : c.elements()) EXPECT_TRUE(cyc[0].contains(*g * x * g->inverse()));
  }
  EXPECT_FALSE(are_conjugate_subgroups(s4, klein[0], cyc[0]).has_value());
}

TEST(PermutationGroup, BlockSystemsOfRegularCyclic) {
  // Blocks of the regular Z_8 are the cosets of its subgroups of order 2 and 4.
  auto z8 = left_regular_representation(make_cyclic(8));
  auto systems = block_systems(z8);
  ASSERT_EQ(systems.size(), 2u);
  EXPECT_EQ(systems[0].block_size(), 2u);
  EXPECT_EQ(systems[1].block_size(), 4u);
  EXPECT_EQ(systems[0].blocks[0], (std::vector<Element>{0, 4}));
  auto minimal = minimal_block_systems(z8);
  ASSERT_EQ(minimal.size(), 1u);
  EXPECT_EQ(minimal[0].block_size(), 2u);
  EXPECT_TRUE(refines(systems[0], systems[1]));
}

TEST(PermutationGroup, PrimitiveGroupHasNoBlocks) {
  EXPECT_TRUE(block_systems(symmetric4()).empty());
  std::vector<Element> pair{0, 1};
  EXPECT_FALSE(is_block(symmetric4(), pair));
}

TEST(PermutationGroup, FixedPointsOfStabilizerSubgroupFormBlock) {
  // Dihedral group of the square acting on its 4 vertices.
  auto d4 = closure({Permutation({1, 2, 3, 0}), Permutation({0, 3, 2, 1})}, 4, 100);
  auto st = point_stabilizer(d4, 0);
  auto fp = fixed_points(st.elements(), 4);
  EXPECT_EQ(fp, (std::vector<Element>{0, 2}));
  EXPECT_TRUE(is_block(d4, fp));
}
