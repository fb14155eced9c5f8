#include <gtest/gtest.h>

#include <numeric>

#include "cimlab/enumerate.hpp"
#include "cimlab/map_iso.hpp"

using namespace cimlab;

namespace {

// Differential condition written out directly: f(h s) = f(h) t with t in S2 and the local
// bijection s -> t intertwining the two rotations.
bool differential_iso(CayleyMap const& m1, CayleyMap const& m2, std::vector<Element> const& f) {
  auto const& h = m1.group();
  if (m1.valency() != m2.valency()) return false;
  for (Element v = 0; v < h.order(); ++v) {
    for (Element s : m1.rotation()) {
      Element t = h.mul(h.inv(f[v]), f[h.mul(v, s)]);
      if (!m2.in_connection_set(t)) return false;
      Element t_next = h.mul(h.inv(f[v]), f[h.mul(v, m1.rho(s))]);
      if (t_next != m2.rho(t)) return false;
    }
  }
  return true;
}

std::vector<std::vector<Element>> all_bijections(std::size_t n) {
  std::vector<Element> f(n);
  std::iota(f.begin(), f.end(), Element{0});
  std::vector<std::vector<Element>> out;
  do out.push_back(f);
  while (std::next_permutation(f.begin(), f.end()));
  return out;
}

std::vector<CayleyMap> all_maps(GroupPtr const& h) {
  std::vector<CayleyMap> out;
  for (auto const& s : symmetric_connection_sets(*h, h->order() - 1)) {
    for_each_rotation(std::span<Element const>(s), [&](std::span<Element const> rot) {
      out.emplace_back(h, std::vector<Element>(rot.begin(), rot.end()));
      return true;
    });
  }
  return out;
}

}  // namespace

TEST(MapIso, AutomorphismGroupMatchesBruteForce) {
  for (auto g : {make_cyclic(5), make_cyclic(6), make_dihedral(3), make_abelian({2, 2})}) {
    auto h = share(std::move(g));
    auto perms = all_bijections(h->order());
    for (auto const& m : all_maps(h)) {
      if (!is_connected(m)) continue;
      std::size_t count = 0;
      for (auto const& f : perms) count += differential_iso(m, m, f);
      auto aut = map_automorphism_group(m);
      EXPECT_EQ(aut.order(), count) << h->name() << " " << m.rotation().size();
      for (auto const& p : aut.elements()) EXPECT_TRUE(differential_iso(m, m, p.images()));
    }
  }
}

TEST(MapIso, IsomorphismExistenceMatchesBruteForce) {
  for (auto g : {make_cyclic(6), make_dihedral(3), make_abelian({2, 2})}) {
    auto h = share(std::move(g));
    auto perms = all_bijections(h->order());
    auto maps = all_maps(h);
    for (std::size_t i = 0; i < maps.size(); ++i) {
      for (std::size_t j = i; j < maps.size(); ++j) {
        if (maps[i].valency() != maps[j].valency()) continue;
        bool brute = std::any_of(perms.begin(), perms.end(),
                                 [&](auto const& f) { return differential_iso(maps[i], maps[j], f); });
        auto iso = find_map_isomorphism(maps[i], maps[j]);
        EXPECT_EQ(iso.has_value(), brute) << h->name() << " " << i << " " << j;
        if (iso) {
          EXPECT_TRUE(differential_iso(maps[i], maps[j], iso->images()));
        }
        EXPECT_EQ(brute_force_map_isomorphism(maps[i], maps[j]).has_value(), brute);
      }
    }
  }
}

TEST(MapIso, Z8AntibalancedMapHasOrder32) {
  auto z8 = share(make_cyclic(8));
  CayleyMap m(z8, {1, 3, 5, 7});
  auto aut = map_automorphism_group(m);
  EXPECT_EQ(aut.order(), 32u);
  EXPECT_TRUE(is_transitive(aut));
  EXPECT_EQ(map_stabilizer(m).size(), 4u);
}

TEST(MapIso, IsomorphismsFormCoset) {
  auto z8 = share(make_cyclic(8));
  CayleyMap m1(z8, {1, 3, 5, 7}), m2(z8, {1, 7, 5, 3});
  auto isos = map_isomorphisms(m1, m2);
  auto aut = map_automorphism_group(m1);
  EXPECT_EQ(isos.size(), aut.order());
  for (auto const& f : isos) EXPECT_TRUE(is_map_isomorphism(m1, m2, Permutation(f.images)));
}

TEST(MapIso, CayleyIsomorphism) {
  auto z8 = share(make_cyclic(8));
  CayleyMap m1(z8, {1, 3, 5, 7}), m2(z8, {1, 7, 5, 3});
  auto sigma = are_cayley_isomorphic(m1, m2);
  ASSERT_TRUE(sigma.has_value());
  EXPECT_TRUE(is_cayley_isomorphism(m1, m2, *sigma));
  EXPECT_EQ(apply_group_automorphism(m1, *sigma), m2);
  EXPECT_FALSE(are_cayley_isomorphic(m1, CayleyMap(z8, {1, 7})).has_value());
}

TEST(MapIso, DisconnectedMapsAcrossComponents) {
  auto z8 = share(make_cyclic(8));
  CayleyMap a(z8, {2, 6}), b(z8, {2, 6});
  auto iso = find_map_isomorphism(a, b);
  ASSERT_TRUE(iso.has_value());
  EXPECT_TRUE(differential_iso(a, b, iso->images()));
  EXPECT_FALSE(find_map_isomorphism(CayleyMap(z8, {2, 6}), CayleyMap(z8, {1, 7})).has_value());
}

TEST(MapIso, DefinitionalModesAgree) {
  auto h = share(make_cyclic(6));
  for (auto const& m : all_maps(h)) {
    auto e = definitional_is_ci_map(m, DefinitionalMode::extension);
    auto b = definitional_is_ci_map(m, DefinitionalMode::brute_force);
    EXPECT_EQ(e.verdict, b.verdict);
    EXPECT_EQ(e.counts, b.counts);
  }
}

TEST(MapIso, DefinitionalCapacity) {
  auto h = share(make_cyclic(9));
  CayleyMap m(h, {1, 5, 7, 8, 4, 2});
  Caps caps;
  caps.definitional_maps = 10;
  EXPECT_THROW(definitional_is_ci_map(m, DefinitionalMode::extension, caps), Error);
  EXPECT_THROW(definitional_is_ci_map(m, DefinitionalMode::brute_force), Error);
}
