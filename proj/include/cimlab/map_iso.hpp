#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cimlab/cayley_map.hpp"
#include "cimlab/enumerate.hpp"
#include "cimlab/error.hpp"
#include "cimlab/group.hpp"
#include "cimlab/perm.hpp"
#include "cimlab/report.hpp"

namespace cimlab {

/// A vertex bijection source -> target preserving adjacency and rotation.
struct MapMorphism {
  CayleyMap source;
  CayleyMap target;
  Permutation images;
};

/// Direct check of both morphism conditions:
///   x^-1 y in S1  =>  f(x)^-1 f(y) in S2
///   f(h)^-1 f(h rho1(s)) = rho2(f(h)^-1 f(h s))
inline bool is_map_isomorphism(CayleyMap const& m1, CayleyMap const& m2, Permutation const& f) {
  auto const& h1 = m1.group();
  auto const& h2 = m2.group();
  if (h1.order() != h2.order() || f.degree() != h1.order() || m1.valency() != m2.valency()) return false;
  for (Element h = 0; h < h1.order(); ++h) {
    Element fh_inv = h2.inv(f(h));
    for (Element s : m1.rotation()) {
      Element d = h2.mul(fh_inv, f(h1.mul(h, s)));
      if (!m2.in_connection_set(d)) return false;
      Element d_next = h2.mul(fh_inv, f(h1.mul(h, m1.rho(s))));
      if (d_next != m2.rho(d)) return false;
    }
  }
  return true;
}

namespace detail {

/// Arc-seeded extension. Seeds f(e) = v and the identity-vertex differential
/// rotation1[i] -> rotation2[i + offset], then propagates breadth-first: at a vertex h whose
/// differential offset is known, f(h s_i) = f(h) t_{i + off(h)}, and the offset at each new
/// vertex follows from the edge back to h. Succeeds iff every arc is consistent and every
/// vertex is reached.
class MapExtender {
 public:
  bool extend(CayleyMap const& m1, CayleyMap const& m2, Element v, std::size_t offset) {
    auto const& h1 = m1.group();
    auto const& h2 = m2.group();
    std::size_t const n = h1.order();
    std::size_t const d = m1.valency();
    auto const& r1 = m1.rotation();
    auto const& r2 = m2.rotation();
    image_.assign(n, kNoElement);
    used_.assign(n, 0);
    offset_.assign(n, 0);
    queue_.clear();
    image_[0] = v;
    used_[v] = 1;
    offset_[0] = static_cast<std::uint32_t>(offset);
    queue_.push_back(0);
    for (std::size_t q = 0; q < queue_.size(); ++q) {
      Element h = queue_[q];
      Element fh = image_[h];
      std::size_t off = offset_[h];
      for (std::size_t i = 0; i < d; ++i) {
        Element t = r2[(i + off) % d];
        Element y = h1.mul(h, r1[i]);
        Element fy = h2.mul(fh, t);
        if (image_[y] == kNoElement) {
          if (used_[fy]) return false;
          used_[fy] = 1;
          image_[y] = fy;
          // differential at y sends y^-1 h = r1[i]^-1 to fy^-1 fh = t^-1
          auto j = static_cast<std::size_t>(m1.position(h1.inv(r1[i])));
          auto k = static_cast<std::size_t>(m2.position(h2.inv(t)));
          offset_[y] = static_cast<std::uint32_t>((k + d - j) % d);
          queue_.push_back(y);
        } else if (image_[y] != fy) {
          return false;
        }
      }
    }
    return queue_.size() == n;
  }

  std::vector<Element> const& images() const noexcept { return image_; }

 private:
  std::vector<Element> image_;
  std::vector<char> used_;
  std::vector<std::uint32_t> offset_;
  std::vector<Element> queue_;
};

}  // namespace detail

/// Stabilizer of the identity vertex in Aut(M), as (offset k, automorphism acting on S as rho^k).
/// Requires a connected map.
inline std::vector<std::pair<std::size_t, Permutation>> map_stabilizer(CayleyMap const& m) {
  CIMLAB_REQUIRE(is_connected(m), ErrorKind::precondition, "map automorphism search needs a connected map");
  std::vector<std::pair<std::size_t, Permutation>> out;
  detail::MapExtender ext;
  for (std::size_t k = 0; k < std::max<std::size_t>(m.valency(), 1); ++k) {
    if (ext.extend(m, m, 0, k)) out.emplace_back(k, Permutation(ext.images()));
  }
  return out;
}

/// Aut(M) for a connected map, as the explicit product of left translations with the
/// identity-vertex stabilizer.
inline PermutationGroup map_automorphism_group(CayleyMap const& m) {
  auto const stab = map_stabilizer(m);
  auto const& h = m.group();
  std::vector<Permutation> elems;
  elems.reserve(h.order() * stab.size());
  for (Element g = 0; g < h.order(); ++g) {
    Permutation lg = left_multiplication(h, g);
    for (auto const& [k, phi] : stab) elems.push_back(lg * phi);
  }
  return PermutationGroup::from_closed_elements(h.order(), std::move(elems));
}

/// All isomorphisms between connected maps, sorted by vertex images.
inline std::vector<MapMorphism> map_isomorphisms(CayleyMap const& m1, CayleyMap const& m2) {
  CIMLAB_REQUIRE(is_connected(m1) && is_connected(m2), ErrorKind::precondition,
                 "map isomorphism search needs connected maps");
  std::vector<MapMorphism> out;
  if (m1.group().order() != m2.group().order() || m1.valency() != m2.valency()) return out;
  detail::MapExtender ext;
  for (Element v = 0; v < m2.group().order(); ++v) {
    for (std::size_t k = 0; k < m1.valency(); ++k) {
      if (ext.extend(m1, m2, v, k)) out.push_back(MapMorphism{m1, m2, Permutation(ext.images())});
    }
  }
  std::sort(out.begin(), out.end(),
            [](MapMorphism const& a, MapMorphism const& b) { return a.images < b.images; });
  return out;
}

namespace detail {

/// Component at the identity: the map restricted to <S>, relabelled as a map over that subgroup.
struct Component {
  Subgroup sub;
  CayleyMap map;
  std::vector<Element> embedding;  // local index -> parent element
};

inline Component identity_component(CayleyMap const& m) {
  Subgroup sub = generated_subgroup(m.group(), std::span<Element const>(m.rotation()));
  auto [k, emb] = subgroup_as_group(m.group(), sub);
  std::vector<Element> local(m.group().order(), kNoElement);
  for (std::size_t i = 0; i < emb.size(); ++i) local[emb[i]] = static_cast<Element>(i);
  std::vector<Element> rot;
  for (Element s : m.rotation()) rot.push_back(local[s]);
  return Component{sub, CayleyMap(share(std::move(k)), std::move(rot)), std::move(emb)};
}

/// Least element of each left coset g<S>, in increasing order.
inline std::vector<Element> left_transversal(FiniteGroup const& h, Subgroup const& sub) {
  std::vector<char> covered(h.order(), 0);
  std::vector<Element> reps;
  for (Element g = 0; g < h.order(); ++g) {
    if (covered[g]) continue;
    reps.push_back(g);
    for (Element s : sub.members) covered[h.mul(g, s)] = 1;
  }
  return reps;
}

}  // namespace detail

/// Some isomorphism m1 -> m2, also for disconnected maps: components are matched coset by
/// coset through one isomorphism of the identity components.
inline std::optional<Permutation> find_map_isomorphism(CayleyMap const& m1, CayleyMap const& m2) {
  if (m1.group().order() != m2.group().order() || m1.valency() != m2.valency()) return std::nullopt;
  if (m1.valency() == 0) return Permutation::identity(m1.group().order());
  detail::MapExtender ext;
  bool const c1 = is_connected(m1), c2 = is_connected(m2);
  if (c1 != c2) return std::nullopt;
  if (c1) {
    // Left translations of the target are automorphisms, so f(e) = e loses nothing.
    for (std::size_t k = 0; k < m1.valency(); ++k) {
      if (ext.extend(m1, m2, 0, k)) return Permutation(ext.images());
    }
    return std::nullopt;
  }
  auto comp1 = detail::identity_component(m1);
  auto comp2 = detail::identity_component(m2);
  if (comp1.sub.order() != comp2.sub.order()) return std::nullopt;
  std::optional<Permutation> local;
  for (std::size_t k = 0; k < m1.valency() && !local; ++k) {
    if (ext.extend(comp1.map, comp2.map, 0, k)) local = Permutation(ext.images());
  }
  if (!local) return std::nullopt;
  auto const& h1 = m1.group();
  auto const& h2 = m2.group();
  auto t1 = detail::left_transversal(h1, comp1.sub);
  auto t2 = detail::left_transversal(h2, comp2.sub);
  std::vector<Element> f(h1.order());
  for (std::size_t c = 0; c < t1.size(); ++c) {
    for (std::size_t i = 0; i < comp1.embedding.size(); ++i) {
      f[h1.mul(t1[c], comp1.embedding[i])] = h2.mul(t2[c], comp2.embedding[(*local)(static_cast<Element>(i))]);
    }
  }
  return Permutation(std::move(f));
}

/// Exhaustive search over Sym(H); a test-scale oracle (|H| <= 8).
inline std::optional<Permutation> brute_force_map_isomorphism(CayleyMap const& m1, CayleyMap const& m2) {
  std::size_t const n = m1.group().order();
  CIMLAB_REQUIRE(n <= 8, ErrorKind::capacity, "brute-force map isomorphism limited to |H| <= 8");
  if (m2.group().order() != n || m1.valency() != m2.valency()) return std::nullopt;
  TernaryRelation const r2 = ternary_relation(m2);
  TernaryRelation const r1 = ternary_relation(m1);
  std::vector<Element> f(n);
  std::iota(f.begin(), f.end(), Element{0});
  do {
    bool ok = std::all_of(r1.triples.begin(), r1.triples.end(), [&](auto const& t) {
      return r2.contains({f[t[0]], f[t[1]], f[t[2]]});
    });
    if (ok) return Permutation(f);
  } while (std::next_permutation(f.begin(), f.end()));
  return std::nullopt;
}

/// Does sigma carry (S1, rho1) onto (S2, rho2)?
inline bool is_cayley_isomorphism(CayleyMap const& m1, CayleyMap const& m2, GroupIsomorphism const& sigma) {
  if (m1.valency() != m2.valency()) return false;
  for (Element s : m1.rotation()) {
    Element t = sigma(s);
    if (!m2.in_connection_set(t) || sigma(m1.rho(s)) != m2.rho(t)) return false;
  }
  return true;
}

/// A group isomorphism H1 -> H2 that is a map isomorphism: `base` composed with each
/// automorphism of H1 in `auts`.
inline std::optional<GroupIsomorphism> are_cayley_isomorphic(CayleyMap const& m1, CayleyMap const& m2,
                                                             std::span<GroupIsomorphism const> auts,
                                                             GroupIsomorphism const& base) {
  if (m1.valency() != m2.valency()) return std::nullopt;
  for (auto const& a : auts) {
    GroupIsomorphism sigma = compose(base, a);
    if (is_cayley_isomorphism(m1, m2, sigma)) return sigma;
  }
  return std::nullopt;
}

inline std::optional<GroupIsomorphism> are_cayley_isomorphic(CayleyMap const& m1, CayleyMap const& m2,
                                                             Caps const& caps = {}) {
  if (m1.valency() != m2.valency() || m1.group().order() != m2.group().order()) return std::nullopt;
  std::optional<GroupIsomorphism> base;
  if (m1.group_ptr() == m2.group_ptr() || m1.group().same_table(m2.group())) {
    base = identity_isomorphism(m1.group().order());
  } else {
    base = is_isomorphic(m1.group(), m2.group(), caps);
  }
  if (!base) return std::nullopt;
  auto const auts = automorphisms(m1.group(), caps);
  return are_cayley_isomorphic(m1, m2, auts, *base);
}

enum class DefinitionalMode { extension, brute_force };

/// CI by definition: every map over H with the same valency that is isomorphic to m must also be
/// Cayley isomorphic to it. The first offending map in canonical order is the witness.
inline CiReport definitional_is_ci_map(CayleyMap const& m, DefinitionalMode mode = DefinitionalMode::extension,
                                       Caps const& caps = {}) {
  auto const& h = m.group();
  CIMLAB_REQUIRE(mode == DefinitionalMode::extension || h.order() <= 8, ErrorKind::capacity,
                 "brute-force definitional oracle limited to |H| <= 8");
  auto const sets = symmetric_connection_sets(h, m.valency());
  std::uint64_t candidates = 0;
  for (auto const& s : sets) {
    if (s.size() == m.valency()) candidates += rotation_count(s.size());
  }
  CIMLAB_REQUIRE(candidates <= caps.definitional_maps, ErrorKind::capacity,
                 "definitional oracle would compare " + std::to_string(candidates) + " maps");

  CiReport report;
  report.subject = h.name() + " rotation " + [&] {
    std::string r;
    for (Element s : m.rotation()) r += (r.empty() ? "" : ",") + std::to_string(s);
    return r;
  }();
  report.method = CiMethod::definitional;
  auto const auts = automorphisms(h, caps);
  auto const id = identity_isomorphism(h.order());
  std::uint64_t compared = 0, isomorphic = 0;
  for (auto const& s : sets) {
    if (s.size() != m.valency()) continue;
    bool keep_going = for_each_rotation(std::span<Element const>(s), [&](std::span<Element const> rot) {
      CayleyMap other(m.group_ptr(), std::vector<Element>(rot.begin(), rot.end()));
      ++compared;
      auto iso = mode == DefinitionalMode::extension ? find_map_isomorphism(other, m)
                                                     : brute_force_map_isomorphism(other, m);
      if (!iso) return true;
      ++isomorphic;
      if (are_cayley_isomorphic(m, other, auts, id)) return true;
      CiWitness w;
      w.kind = WitnessKind::map_pair;
      w.map = m;
      w.other = other;
      w.isomorphism = *iso;
      report.witnesses.push_back(std::move(w));
      report.verdict = false;
      return false;
    });
    if (!keep_going) break;
  }
  report.counts["maps_compared"] = compared;
  report.counts["maps_isomorphic"] = isomorphic;
  return report;
}

}  // namespace cimlab
