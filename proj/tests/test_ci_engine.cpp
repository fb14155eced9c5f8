#include <gtest/gtest.h>

#include "cimlab/ci.hpp"
#include "cimlab/conjugacy.hpp"
#include "cimlab/json_io.hpp"
#include "cimlab/parallel.hpp"
#include "cimlab/stabilizer_search.hpp"

using namespace cimlab;

namespace {

// Sum of (k-1)! over inverse-closed subsets, enumerated as raw bitmasks.
std::uint64_t map_count_by_bitmask(FiniteGroup const& h, std::size_t max_valency) {
  std::uint64_t total = 0;
  std::size_t const n = h.order() - 1;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    bool closed = true;
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) continue;
      ++k;
      closed = closed && (mask >> (h.inv(static_cast<Element>(i + 1)) - 1) & 1);
    }
    if (!closed || k > max_valency) continue;
    std::uint64_t f = 1;
    for (std::size_t i = 2; i < k; ++i) f *= i;
    total += f;
  }
  return total;
}

CimOptions options(std::size_t k, std::size_t workers = 1) {
  CimOptions o;
  o.max_valency = k;
  o.workers = workers;
  return o;
}

}  // namespace

TEST(CiEngine, Z8MapCountMatchesBitmaskOracle) {
  auto z8 = share(make_cyclic(8));
  std::uint64_t const oracle = map_count_by_bitmask(*z8, 7);
  EXPECT_EQ(oracle, 940u);
  auto en = enumerate_cayley_maps(z8, 7);
  EXPECT_EQ(en.maps.size(), oracle);
  auto r = verify_cim_group(z8, options(7));
  EXPECT_TRUE(r.verdict);
  EXPECT_EQ(r.counts.at("maps_checked"), oracle);
  EXPECT_EQ(r.counts.at("connected_maps") + r.counts.at("disconnected_maps"), oracle);
}

TEST(CiEngine, EnumerationCountsMatchOracleAcrossGroups) {
  for (auto g : {make_generalized_quaternion(8), make_abelian({2, 2, 2}), make_dihedral(4), make_cyclic(9)}) {
    auto h = share(std::move(g));
    for (std::size_t k = 1; k < h->order(); ++k) {
      EXPECT_EQ(enumerate_cayley_maps(h, k).maps.size(), map_count_by_bitmask(*h, k)) << h->name() << " " << k;
    }
  }
}

TEST(CiEngine, OrbitRepresentativesCoverEveryMap) {
  auto h = share(make_cyclic(8));
  auto all = enumerate_cayley_maps(h, 7);
  auto reps = enumerate_cayley_maps(h, 7, EnumerationMode::up_to_cayley_iso);
  EXPECT_LT(reps.maps.size(), all.maps.size());
  for (auto const& m : all.maps) {
    bool covered = std::any_of(reps.maps.begin(), reps.maps.end(),
                               [&](CayleyMap const& r) { return are_cayley_isomorphic(m, r).has_value(); });
    EXPECT_TRUE(covered);
  }
}

TEST(CiEngine, BabaiAgreesWithDefinitionOnZ9Counterexample) {
  auto z9 = share(make_cyclic(9));
  CayleyMap m(z9, {1, 5, 7, 8, 4, 2});
  auto b = babai_is_ci_map(m);
  auto d = definitional_is_ci_map(m);
  EXPECT_FALSE(b.verdict);
  EXPECT_FALSE(d.verdict);
  EXPECT_EQ(b.counts.at("aut_order"), 54u);
  ASSERT_FALSE(d.witnesses.empty());
  auto const& w = d.witnesses.front();
  EXPECT_TRUE(is_map_isomorphism(*w.other, *w.map, *w.isomorphism));
  EXPECT_FALSE(are_cayley_isomorphic(*w.map, *w.other).has_value());
}

TEST(CiEngine, BabaiRequiresConnectedMap) {
  auto z8 = share(make_cyclic(8));
  EXPECT_THROW(babai_is_ci_map(CayleyMap(z8, {2, 6})), Error);
}

TEST(CiEngine, GuidedSearchMatchesDirect) {
  for (auto g : {make_cyclic(8), make_cyclic(9), make_generalized_quaternion(8), make_abelian({3, 3}),
                 make_dihedral(4)}) {
    auto h = share(std::move(g));
    for (auto const& s : symmetric_connection_sets(*h, 7)) {
      if (s.size() < 3 || generated_subgroup(*h, std::span<Element const>(s)).order() != h->order()) continue;
      EXPECT_EQ(rotations_with_nontrivial_stabilizer_guided(h, s), rotations_with_nontrivial_stabilizer_direct(h, s))
          << h->name() << " |S|=" << s.size();
    }
  }
}

TEST(CiEngine, GuidedSearchRejectsNonGeneratingSet) {
  auto h = share(make_cyclic(8));
  EXPECT_THROW(rotations_with_nontrivial_stabilizer_guided(h, {2, 6}), Error);
}

TEST(CiEngine, ParallelMapIsDeterministic) {
  auto f = [](std::size_t i) { return i * i + 7; };
  auto a = parallel_map<std::size_t>(1000, 1, f);
  for (std::size_t w : {2u, 4u, 8u}) EXPECT_EQ(parallel_map<std::size_t>(1000, w, f), a);
  EXPECT_THROW(parallel_map<int>(10, 4,
                                 [](std::size_t i) -> int {
                                   if (i == 3) throw std::runtime_error("boom");
                                   return 0;
                                 }),
               std::runtime_error);
}

TEST(CiEngine, VerifyCimIsWorkerIndependent) {
  auto h = share(make_cyclic(9));
  io::GroupRegistry r1, r2;
  auto a = io::report_json(verify_cim_group(h, options(6, 1)), r1);
  auto b = io::report_json(verify_cim_group(h, options(6, 4)), r2);
  EXPECT_EQ(io::dump_pretty(a), io::dump_pretty(b));
}

TEST(CiEngine, Z9IsNotCimAndWitnessReverifies) {
  auto h = share(make_cyclic(9));
  auto r = verify_cim_group(h, options(8));
  EXPECT_FALSE(r.verdict);
  ASSERT_FALSE(r.witnesses.empty());
  io::GroupRegistry reg;
  auto j = io::report_json(r, reg);
  auto reloaded = io::json::parse(io::dump_pretty(j));
  EXPECT_TRUE(io::reverify_report(reloaded, reg.groups()));
}

TEST(CiEngine, SmallCyclicGroupsAreCim) {
  for (std::size_t n : {3u, 4u, 5u, 6u, 7u}) {
    auto h = share(make_cyclic(n));
    EXPECT_TRUE(verify_cim_group(h, options(n - 1)).verdict) << n;
  }
}

TEST(CiEngine, ReductionConditions) {
  auto z8 = make_cyclic(8);
  auto auts = automorphisms(z8);
  auto rc = check_reduction(z8, generated_subgroup(z8, {Element{2}}), auts, true);
  EXPECT_TRUE(rc.usable());
  // In Z2 x Z4 the subgroups of order 2 are not all Aut-equivalent: <(0,2)> is a square.
  auto g = make_abelian({2, 4});
  auto gauts = automorphisms(g);
  std::size_t usable = 0;
  for (auto const& s : all_subgroups(g)) {
    if (s.order() == 2) usable += check_reduction(g, s, gauts, true).orbit_condition;
  }
  EXPECT_EQ(usable, 0u);
}

TEST(CiEngine, CrossValidationSmallGroups) {
  for (auto g : {make_cyclic(6), make_dihedral(3), make_abelian({2, 2})}) {
    auto h = share(std::move(g));
    auto r = cross_validate(h, 2);
    EXPECT_TRUE(r.verdict) << h->name();
    EXPECT_EQ(r.counts.at("discrepancies"), 0u);
  }
  EXPECT_THROW(cross_validate(share(make_cyclic(9))), Error);
}

TEST(CiEngine, ConnectedZ16Fails) {
  auto h = share(make_cyclic(16));
  auto r = verify_connected_cim(h, options(8));
  EXPECT_FALSE(r.verdict);
  EXPECT_TRUE(is_connected(*r.witnesses.front().map));
}

TEST(CiEngine, CyclicStabilizerConjugacy) {
  auto z6 = share(make_cyclic(6));
  CayleyMap m(z6, {1, 2, 4, 5});
  auto aut = map_automorphism_group(m);
  auto r = check_cyclic_stabilizer_conjugacy(aut, *z6);
  EXPECT_TRUE(r.verdict);
  for (auto const& w : r.witnesses) EXPECT_EQ(w.kind, WitnessKind::conjugator);

  auto z9 = share(make_cyclic(9));
  CayleyMap bad(z9, {1, 5, 7, 8, 4, 2});
  auto aut9 = map_automorphism_group(bad);
  EXPECT_THROW(check_cyclic_stabilizer_conjugacy(aut9, *z9), Error);
  auto r9 = check_cyclic_stabilizer_conjugacy(aut9, *z9, false);
  EXPECT_FALSE(r9.verdict);
}

TEST(CiEngine, ConjugacyErrorKinds) {
  auto s4 = closure({Permutation({1, 2, 3, 0}), Permutation({1, 0, 2, 3})}, 4, 100);
  try {
    check_cyclic_stabilizer_conjugacy(s4, make_cyclic(4));
    FAIL();
  } catch (Error const& e) {
    EXPECT_EQ(e.kind(), ErrorKind::stabilizer_not_cyclic);
  }
  auto intrans = closure({Permutation({1, 0, 2, 3})}, 4, 100);
  try {
    check_cyclic_stabilizer_conjugacy(intrans, make_cyclic(4));
    FAIL();
  } catch (Error const& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_transitive);
  }
}

TEST(CiEngine, GuidedSearchMatchesDirectAtValencyTen) {
  std::size_t nonempty = 0;
  for (auto [n, s] : {std::pair<std::size_t, std::vector<Element>>{11, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}},
                      {12, {1, 2, 3, 4, 5, 7, 8, 9, 10, 11}},
                      {13, {1, 2, 3, 4, 5, 8, 9, 10, 11, 12}}}) {
    auto h = share(make_cyclic(n));
    auto direct = rotations_with_nontrivial_stabilizer_direct(h, s);
    nonempty += !direct.empty();
    EXPECT_EQ(rotations_with_nontrivial_stabilizer_guided(h, s), direct) << n;
    EXPECT_EQ(rotations_with_nontrivial_stabilizer(h, s), direct) << n;
  }
  EXPECT_GT(nonempty, 0u);
}
