#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cimlab/cayley_map.hpp"
#include "cimlab/enumerate.hpp"
#include "cimlab/error.hpp"
#include "cimlab/group.hpp"
#include "cimlab/map_iso.hpp"
#include "cimlab/parallel.hpp"
#include "cimlab/perm.hpp"
#include "cimlab/report.hpp"
#include "cimlab/stabilizer_search.hpp"

namespace cimlab {

inline std::string describe(CayleyMap const& m) {
  std::string out = m.group().name() + "@";
  for (std::size_t i = 0; i < m.rotation().size(); ++i) {
    if (i) out += ',';
    out += std::to_string(m.rotation()[i]);
  }
  return out;
}

namespace detail {

/// Relabels m along the regular action of r: theta(h) = f(h)(e) for a group isomorphism
/// f: H -> r. The result is isomorphic to m via theta, and it is Cayley isomorphic to m
/// exactly when r is conjugate to the left-regular copy inside Aut(m).
inline CiWitness rival_witness(CayleyMap const& m, PermutationGroup const& rival, Caps const& caps) {
  FiniteGroup abstract = as_abstract_group(rival);
  auto f = is_isomorphic(m.group(), abstract, caps);
  CIMLAB_REQUIRE(f.has_value(), ErrorKind::precondition, "rival subgroup is not isomorphic to the map's group");
  std::vector<Element> theta(m.group().order());
  for (Element h = 0; h < m.group().order(); ++h) theta[h] = rival.elements()[(*f)(h)](0);
  Permutation t(std::move(theta));
  CiWitness w;
  w.kind = WitnessKind::rival_subgroup;
  w.subgroup_generators = rival.generators();
  w.subgroup_order = rival.order();
  w.map = m;
  w.other = pull_back(m, t);
  w.isomorphism = t;
  return w;
}

}  // namespace detail

/// CI verdict through Babai's criterion: every H-regular subgroup of Aut(M) must be conjugate
/// to the left-regular copy.
inline CiReport babai_is_ci_map(CayleyMap const& m, Caps const& caps = {}) {
  CIMLAB_REQUIRE(is_connected(m), ErrorKind::precondition, "Babai criterion needs a connected map");
  auto const& h = m.group();
  CiReport report;
  report.subject = describe(m);
  report.method = CiMethod::babai;
  auto const stab = map_stabilizer(m);
  report.counts["aut_order"] = h.order() * stab.size();
  report.counts["stabilizer_order"] = stab.size();
  if (stab.size() == 1) {
    report.counts["regular_subgroups"] = 1;
    return report;
  }
  PermutationGroup const aut = map_automorphism_group(m);
  PermutationGroup const hat = left_regular_representation(h);
  auto const regs = regular_subgroups_isomorphic_to(aut, h, caps);
  report.counts["regular_subgroups"] = regs.size();
  for (auto const& r : regs) {
    if (r == hat || are_conjugate_subgroups(aut, r, hat)) continue;
    report.verdict = false;
    report.witnesses.push_back(detail::rival_witness(m, r, caps));
    break;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Enumeration

enum class EnumerationMode { all, up_to_cayley_iso };

struct MapEnumeration {
  std::string group;
  std::size_t max_valency = 0;
  EnumerationMode mode = EnumerationMode::all;
  std::vector<CayleyMap> maps;
  std::map<std::size_t, std::uint64_t> counts_by_valency;
};

/// Is m the least member (map_less) of its Aut(H)-orbit?
inline bool is_orbit_representative(CayleyMap const& m, std::span<GroupIsomorphism const> auts) {
  return std::none_of(auts.begin(), auts.end(), [&](GroupIsomorphism const& a) {
    return map_less(apply_group_automorphism(m, a), m);
  });
}

inline MapEnumeration enumerate_cayley_maps(GroupPtr h, std::size_t max_valency,
                                            EnumerationMode mode = EnumerationMode::all, Caps const& caps = {}) {
  CIMLAB_REQUIRE(max_valency + 1 <= h->order() || h->order() == 1, ErrorKind::invalid_argument,
                 "max valency must be at most |H| - 1");
  auto const sets = symmetric_connection_sets(*h, max_valency);
  std::uint64_t total = 0;
  for (auto const& s : sets) total += rotation_count(s.size());
  CIMLAB_REQUIRE(total <= caps.enumerated_maps, ErrorKind::capacity,
                 "enumeration would produce " + std::to_string(total) + " maps");
  MapEnumeration out;
  out.group = h->name();
  out.max_valency = max_valency;
  out.mode = mode;
  std::vector<GroupIsomorphism> auts;
  if (mode == EnumerationMode::up_to_cayley_iso) auts = automorphisms(*h, caps);
  for (auto const& s : sets) {
    for_each_rotation(std::span<Element const>(s), [&](std::span<Element const> rot) {
      CayleyMap m(h, std::vector<Element>(rot.begin(), rot.end()));
      if (mode == EnumerationMode::up_to_cayley_iso && !is_orbit_representative(m, auts)) return true;
      ++out.counts_by_valency[m.valency()];
      out.maps.push_back(std::move(m));
      return true;
    });
  }
  return out;
}

// ---------------------------------------------------------------------------
// Disconnected maps: reduction to the component at the identity

/// Whether connected CI-ness over K decides disconnected maps with <S> = K.
/// Requires (a) all subgroups of order |K| form one Aut(H)-orbit and (b) every automorphism of
/// K extends to H; the pipeline applies it only to cyclic groups and class M.
struct ReductionCheck {
  bool group_supported = false;  // H cyclic or in class M
  bool orbit_condition = false;
  bool extension_condition = false;
  bool usable() const { return group_supported && orbit_condition && extension_condition; }
};

inline ReductionCheck check_reduction(FiniteGroup const& h, Subgroup const& k, std::span<GroupIsomorphism const> auts,
                                      bool group_supported, Caps const& caps = {}) {
  ReductionCheck rc;
  rc.group_supported = group_supported;
  auto image = [&](GroupIsomorphism const& a) {
    std::vector<Element> img;
    for (Element x : k.members) img.push_back(a(x));
    std::sort(img.begin(), img.end());
    return img;
  };
  std::set<std::vector<Element>> orbit;
  std::set<std::vector<Element>> restrictions;
  for (auto const& a : auts) {
    auto img = image(a);
    if (img == k.members) {
      std::vector<Element> r;
      for (Element x : k.members) r.push_back(a(x));
      restrictions.insert(std::move(r));
    }
    orbit.insert(std::move(img));
  }
  rc.orbit_condition = true;
  for (auto const& s : all_subgroups(h, caps)) {
    if (s.order() == k.order() && !orbit.count(s.members)) rc.orbit_condition = false;
  }
  auto [kg, emb] = subgroup_as_group(h, k);
  rc.extension_condition = restrictions.size() == automorphisms(kg, caps).size();
  return rc;
}

// ---------------------------------------------------------------------------
// CIM pipelines

enum class CimScope { all_maps, connected_only };

struct CimOptions {
  std::size_t max_valency = 0;
  std::size_t workers = 1;
  Caps caps{};
};

namespace detail {

struct SetOutcome {
  std::uint64_t maps = 0;
  std::uint64_t nontrivial = 0;
  std::uint64_t babai_runs = 0;
  bool connected = true;
  bool guided = false;
  bool skipped = false;
  bool unsupported = false;
  bool reduced = false;
  std::optional<CiWitness> failure;
};

inline SetOutcome check_connected_set(GroupPtr const& h, std::vector<Element> const& set, Caps const& caps) {
  SetOutcome out;
  out.guided = rotation_count(set.size()) > kDirectRotationLimit;
  auto const candidates = rotations_with_nontrivial_stabilizer(h, set);
  out.maps = rotation_count(set.size());
  out.nontrivial = candidates.size();
  for (auto const& rot : candidates) {
    CayleyMap m(h, rot);
    ++out.babai_runs;
    auto r = babai_is_ci_map(m, caps);
    if (!r.verdict) {
      out.maps = rotation_rank(std::span<Element const>(rot)) + 1;
      out.failure = std::move(r.witnesses.front());
      break;
    }
  }
  return out;
}

/// A disconnected set S: non-CI components give definite failures (lifted to H); CI components
/// settle the map only when the reduction is usable.
inline SetOutcome check_disconnected_set(GroupPtr const& h, std::vector<Element> const& set, ReductionCheck const& rc,
                                         Caps const& caps) {
  SetOutcome out;
  out.connected = false;
  Subgroup const k = generated_subgroup(*h, std::span<Element const>(set));
  auto [kg, emb] = subgroup_as_group(*h, k);
  GroupPtr const kp = share(std::move(kg));
  std::vector<Element> local(h->order(), kNoElement);
  for (std::size_t i = 0; i < emb.size(); ++i) local[emb[i]] = static_cast<Element>(i);
  std::vector<Element> local_set;
  for (Element s : set) local_set.push_back(local[s]);
  std::sort(local_set.begin(), local_set.end());

  // rotations in canonical order correspond because the embedding is increasing
  auto const candidates = rotations_with_nontrivial_stabilizer(kp, local_set);
  out.nontrivial = candidates.size();
  out.maps = rotation_count(set.size());
  for (auto const& rot : candidates) {
    CayleyMap comp(kp, rot);
    ++out.babai_runs;
    auto r = babai_is_ci_map(comp, caps);
    if (r.verdict) continue;
    auto lift = [&](CayleyMap const& c) {
      std::vector<Element> g;
      for (Element x : c.rotation()) g.push_back(emb[x]);
      return CayleyMap(h, std::move(g));
    };
    CayleyMap m = lift(comp);
    CiWitness w = r.witnesses.front();
    w.kind = WitnessKind::map_pair;
    w.map = m;
    w.other = lift(*w.other);
    w.isomorphism = find_map_isomorphism(*w.other, m);
    CIMLAB_REQUIRE(w.isomorphism.has_value(), ErrorKind::precondition, "lifted witness lost its isomorphism");
    w.subgroup_generators.clear();
    w.subgroup_order = 0;
    out.maps = rotation_rank(std::span<Element const>(m.rotation())) + 1;
    out.failure = std::move(w);
    return out;
  }
  if (rc.usable()) {
    out.reduced = true;
  } else {
    out.unsupported = true;
  }
  return out;
}

}  // namespace detail

inline CiReport verify_cim(GroupPtr h, CimScope scope, CimOptions const& opt) {
  CIMLAB_REQUIRE(h->order() <= opt.caps.group_order, ErrorKind::capacity,
                 "group order " + std::to_string(h->order()) + " exceeds cap " + std::to_string(opt.caps.group_order));
  CIMLAB_REQUIRE(opt.max_valency + 1 <= h->order() || h->order() == 1, ErrorKind::invalid_argument,
                 "max valency must be at most |H| - 1");
  auto const sets = symmetric_connection_sets(*h, opt.max_valency);
  std::vector<char> connected(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    connected[i] = generated_subgroup(*h, std::span<Element const>(sets[i])).order() == h->order();
  }

  // reduction checks, one per distinct component subgroup
  std::map<std::vector<Element>, ReductionCheck> reductions;
  bool const any_disconnected = std::count(connected.begin(), connected.end(), 0) > 0;
  if (scope == CimScope::all_maps && any_disconnected) {
    bool const supported = is_cyclic(*h) || in_class_m(*h, opt.caps);
    auto const auts = automorphisms(*h, opt.caps);
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (connected[i]) continue;
      Subgroup k = generated_subgroup(*h, std::span<Element const>(sets[i]));
      if (!reductions.count(k.members)) reductions.emplace(k.members, check_reduction(*h, k, auts, supported, opt.caps));
    }
  }

  auto outcomes = parallel_map<detail::SetOutcome>(sets.size(), opt.workers, [&](std::size_t i) {
    if (connected[i]) return detail::check_connected_set(h, sets[i], opt.caps);
    if (scope == CimScope::connected_only) {
      detail::SetOutcome o;
      o.connected = false;
      o.skipped = true;
      o.maps = rotation_count(sets[i].size());
      return o;
    }
    Subgroup k = generated_subgroup(*h, std::span<Element const>(sets[i]));
    return detail::check_disconnected_set(h, sets[i], reductions.at(k.members), opt.caps);
  });

  CiReport report;
  report.subject = h->name() + " max valency " + std::to_string(opt.max_valency);
  report.method = scope == CimScope::all_maps ? CiMethod::exhaustive_cim : CiMethod::connected_cim;
  std::uint64_t sets_seen = 0, maps = 0, connected_maps = 0, disconnected_maps = 0, skipped = 0, nontrivial = 0,
                babai = 0, guided = 0, reduced = 0;
  std::optional<std::size_t> unsupported;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    auto& o = outcomes[i];
    ++sets_seen;
    maps += o.maps;
    (o.connected ? connected_maps : disconnected_maps) += o.maps;
    if (o.skipped) skipped += o.maps;
    if (o.reduced) reduced += o.maps;
    nontrivial += o.nontrivial;
    babai += o.babai_runs;
    guided += o.guided;
    if (o.unsupported && !unsupported) unsupported = i;
    if (o.failure) {
      report.verdict = false;
      report.witnesses.push_back(std::move(*o.failure));
      break;
    }
  }
  if (report.verdict && unsupported) {
    std::string s;
    for (Element x : sets[*unsupported]) s += (s.empty() ? "" : ",") + std::to_string(x);
    throw Error(ErrorKind::unsupported_reduction,
                "disconnected maps over " + h->name() + " with S = {" + s +
                    "} need the subgroup reduction, which is only applied to cyclic groups and class M");
  }
  report.counts["connection_sets"] = sets_seen;
  report.counts["maps_checked"] = maps - skipped;
  report.counts["connected_maps"] = connected_maps;
  report.counts["disconnected_maps"] = disconnected_maps;
  report.counts["nontrivial_stabilizer_maps"] = nontrivial;
  report.counts["babai_runs"] = babai;
  report.counts["guided_sets"] = guided;
  if (scope == CimScope::connected_only) report.counts["disconnected_skipped"] = skipped;
  if (reduced) {
    report.counts["reduced_maps"] = reduced;
    report.notes.push_back("disconnected maps decided through their component at the identity; the reduction "
                           "was checked to be valid for every component subgroup used");
  }
  return report;
}

inline CiReport verify_cim_group(GroupPtr h, CimOptions const& opt) { return verify_cim(std::move(h), CimScope::all_maps, opt); }

inline CiReport verify_connected_cim(GroupPtr h, CimOptions const& opt) {
  return verify_cim(std::move(h), CimScope::connected_only, opt);
}

/// Definitional oracle against Babai's criterion on every map over a small group. Connected
/// maps compare the two verdicts directly; disconnected maps are compared with the subgroup
/// reduction where it is usable and counted as unchecked otherwise.
inline CiReport cross_validate(GroupPtr h, std::size_t workers = 1, Caps const& caps = {}) {
  CIMLAB_REQUIRE(h->order() <= 8, ErrorKind::capacity, "cross-validation is limited to |H| <= 8");
  CiReport report;
  report.subject = h->name();
  report.method = CiMethod::cross_validation;
  std::size_t const max_valency = h->order() == 1 ? 0 : h->order() - 1;
  auto const en = enumerate_cayley_maps(h, max_valency, EnumerationMode::all, caps);
  auto const auts = automorphisms(*h, caps);
  bool const supported = is_cyclic(*h) || in_class_m(*h, caps);
  std::map<std::vector<Element>, ReductionCheck> reductions;
  for (auto const& m : en.maps) {
    if (is_connected(m)) continue;
    Subgroup k = generated_subgroup(*h, std::span<Element const>(m.rotation()));
    if (!reductions.count(k.members)) reductions.emplace(k.members, check_reduction(*h, k, auts, supported, caps));
  }

  struct Row {
    bool connected = true;
    bool compared = false;
    bool agree = true;
    bool definitional = true;
  };
  auto rows = parallel_map<Row>(en.maps.size(), workers, [&](std::size_t i) {
    auto const& m = en.maps[i];
    Row row;
    row.connected = is_connected(m);
    row.definitional = definitional_is_ci_map(m, DefinitionalMode::extension, caps).verdict;
    if (row.connected) {
      row.compared = true;
      row.agree = row.definitional == babai_is_ci_map(m, caps).verdict;
      return row;
    }
    Subgroup k = generated_subgroup(*h, std::span<Element const>(m.rotation()));
    auto [kg, emb] = subgroup_as_group(*h, k);
    std::vector<Element> local(h->order(), kNoElement);
    for (std::size_t j = 0; j < emb.size(); ++j) local[emb[j]] = static_cast<Element>(j);
    std::vector<Element> rot;
    for (Element s : m.rotation()) rot.push_back(local[s]);
    bool const component_ci = babai_is_ci_map(CayleyMap(share(std::move(kg)), std::move(rot)), caps).verdict;
    if (!component_ci) {
      row.compared = true;
      row.agree = !row.definitional;
    } else if (reductions.at(k.members).usable()) {
      row.compared = true;
      row.agree = row.definitional;
    }
    return row;
  });

  std::uint64_t connected = 0, disconnected = 0, compared = 0, unchecked = 0, non_ci = 0, discrepancies = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto const& r = rows[i];
    (r.connected ? connected : disconnected) += 1;
    compared += r.compared;
    unchecked += !r.compared;
    non_ci += !r.definitional;
    if (r.compared && !r.agree) {
      ++discrepancies;
      if (report.verdict) {
        CiWitness w;
        w.kind = WitnessKind::map_pair;
        w.map = en.maps[i];
        report.witnesses.push_back(std::move(w));
        report.notes.push_back("definitional and Babai verdicts disagree on " + describe(en.maps[i]));
      }
      report.verdict = false;
    }
  }
  report.counts["maps"] = en.maps.size();
  report.counts["connected_maps"] = connected;
  report.counts["disconnected_maps"] = disconnected;
  report.counts["compared"] = compared;
  report.counts["disconnected_unchecked"] = unchecked;
  report.counts["non_ci_maps"] = non_ci;
  report.counts["discrepancies"] = discrepancies;
  return report;
}

}  // namespace cimlab
