#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cimlab/error.hpp"
#include "cimlab/group.hpp"

namespace cimlab {

/// A bijection of {0, ..., degree-1}.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<Element> images) : images_(std::move(images)) {
    std::vector<char> hit(images_.size(), 0);
    for (Element v : images_) {
      CIMLAB_REQUIRE(v < images_.size() && !hit[v], ErrorKind::invalid_argument,
                     "images do not form a bijection");
      hit[v] = 1;
    }
  }

  static Permutation identity(std::size_t degree) {
    std::vector<Element> v(degree);
    std::iota(v.begin(), v.end(), Element{0});
    return Permutation(unchecked{}, std::move(v));
  }

  std::size_t degree() const noexcept { return images_.size(); }
  Element operator()(Element x) const { return images_[x]; }
  std::vector<Element> const& images() const noexcept { return images_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != i) return false;
    }
    return true;
  }

  bool is_fixed_point_free() const {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] == i) return false;
    }
    return true;
  }

  Permutation inverse() const {
    std::vector<Element> v(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) v[images_[i]] = static_cast<Element>(i);
    return Permutation(unchecked{}, std::move(v));
  }

  /// lcm of the cycle lengths.
  std::size_t order() const {
    std::vector<char> seen(images_.size(), 0);
    std::size_t result = 1;
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i]) continue;
      std::size_t len = 0;
      for (Element j = static_cast<Element>(i); !seen[j]; j = images_[j]) {
        seen[j] = 1;
        ++len;
      }
      result = std::lcm(result, len);
    }
    return result;
  }

  /// (a * b)(x) = a(b(x)).
  friend Permutation operator*(Permutation const& a, Permutation const& b) {
    std::vector<Element> v(b.images_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.images_[b.images_[i]];
    return Permutation(unchecked{}, std::move(v));
  }

  Permutation pow(long long k) const {
    Permutation base = k < 0 ? inverse() : *this;
    Permutation r = identity(degree());
    for (long long i = 0; i < (k < 0 ? -k : k); ++i) r = base * r;
    return r;
  }

  friend auto operator<=>(Permutation const&, Permutation const&) = default;
  friend bool operator==(Permutation const&, Permutation const&) = default;

 private:
  struct unchecked {};
  Permutation(unchecked, std::vector<Element> images) : images_(std::move(images)) {}

  std::vector<Element> images_;
};

struct PermutationHash {
  std::size_t operator()(Permutation const& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Element v : p.images()) h = (h ^ v) * 1099511628211ull;
    return h;
  }
};

/// An explicitly enumerated permutation group: sorted element list plus generators.
class PermutationGroup {
 public:
  PermutationGroup() = default;

  std::size_t degree() const noexcept { return degree_; }
  std::size_t order() const noexcept { return elements_.size(); }
  std::vector<Permutation> const& elements() const noexcept { return elements_; }
  std::vector<Permutation> const& generators() const noexcept { return generators_; }

  bool contains(Permutation const& p) const {
    return std::binary_search(elements_.begin(), elements_.end(), p);
  }

  std::optional<std::size_t> index_of(Permutation const& p) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
    if (it == elements_.end() || *it != p) return std::nullopt;
    return static_cast<std::size_t>(it - elements_.begin());
  }

  /// Same element set.
  friend bool operator==(PermutationGroup const& a, PermutationGroup const& b) {
    return a.degree_ == b.degree_ && a.elements_ == b.elements_;
  }

  /// Builds from a list already known to be closed; sorts it and derives generators.
  static PermutationGroup from_closed_elements(std::size_t degree, std::vector<Permutation> elements);

  friend PermutationGroup closure(std::vector<Permutation> const& gens, std::size_t degree,
                                  std::size_t cap);

 private:
  std::size_t degree_ = 0;
  std::vector<Permutation> elements_;
  std::vector<Permutation> generators_;
};

/// Full element enumeration of <gens> by breadth-first right multiplication.
inline PermutationGroup closure(std::vector<Permutation> const& gens, std::size_t degree,
                                std::size_t cap = Caps{}.perm_group_order) {
  for (auto const& g : gens) {
    CIMLAB_REQUIRE(g.degree() == degree, ErrorKind::invalid_argument,
                   "generators must share one degree");
  }
  std::unordered_set<Permutation, PermutationHash> seen;
  std::vector<Permutation> elems{Permutation::identity(degree)};
  seen.insert(elems.front());
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (auto const& g : gens) {
      Permutation p = elems[i] * g;
      if (seen.insert(p).second) {
        CIMLAB_REQUIRE(elems.size() < cap, ErrorKind::capacity,
                       "permutation group exceeds cap " + std::to_string(cap));
        elems.push_back(std::move(p));
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  PermutationGroup g;
  g.degree_ = degree;
  g.elements_ = std::move(elems);
  for (auto const& p : gens) {
    if (!p.is_identity() && std::find(g.generators_.begin(), g.generators_.end(), p) == g.generators_.end()) {
      g.generators_.push_back(p);
    }
  }
  return g;
}

inline PermutationGroup PermutationGroup::from_closed_elements(std::size_t degree,
                                                               std::vector<Permutation> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  PermutationGroup g;
  g.degree_ = degree;
  // Greedy generators: take the first element not yet generated.
  std::unordered_set<Permutation, PermutationHash> reached{Permutation::identity(degree)};
  std::vector<Permutation> reached_list{Permutation::identity(degree)};
  for (auto const& p : elements) {
    if (reached.count(p)) continue;
    g.generators_.push_back(p);
    for (std::size_t i = 0; i < reached_list.size(); ++i) {
      for (auto const& gen : g.generators_) {
        Permutation q = reached_list[i] * gen;
        if (reached.insert(q).second) reached_list.push_back(std::move(q));
      }
    }
  }
  CIMLAB_REQUIRE(reached_list.size() == elements.size(), ErrorKind::invalid_argument,
                 "element list is not closed under composition");
  g.elements_ = std::move(elements);
  return g;
}

/// The left-regular representation: h acts by x -> h*x.
inline Permutation left_multiplication(FiniteGroup const& h, Element g) {
  std::vector<Element> v(h.order());
  for (Element x = 0; x < h.order(); ++x) v[x] = h.mul(g, x);
  return Permutation(std::move(v));
}

inline PermutationGroup left_regular_representation(FiniteGroup const& h) {
  std::vector<Permutation> elems;
  elems.reserve(h.order());
  for (Element g = 0; g < h.order(); ++g) elems.push_back(left_multiplication(h, g));
  return PermutationGroup::from_closed_elements(h.order(), std::move(elems));
}

inline std::vector<Element> orbit(PermutationGroup const& g, Element x) {
  std::vector<char> seen(g.degree(), 0);
  std::vector<Element> out{x};
  seen[x] = 1;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (auto const& s : g.generators()) {
      Element y = s(out[i]);
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_transitive(PermutationGroup const& g) {
  return g.degree() == 0 || orbit(g, 0).size() == g.degree();
}

/// Transitive with |g| = degree.
inline bool is_regular(PermutationGroup const& g) {
  return is_transitive(g) && g.order() == g.degree();
}

inline PermutationGroup point_stabilizer(PermutationGroup const& g, Element point) {
  CIMLAB_REQUIRE(point < g.degree(), ErrorKind::invalid_argument, "point out of range");
  std::vector<Permutation> elems;
  for (auto const& p : g.elements()) {
    if (p(point) == point) elems.push_back(p);
  }
  return PermutationGroup::from_closed_elements(g.degree(), std::move(elems));
}

/// Points fixed by every permutation in the list.
inline std::vector<Element> fixed_points(std::span<Permutation const> perms, std::size_t degree) {
  std::vector<Element> out;
  for (Element x = 0; x < degree; ++x) {
    bool fixed = std::all_of(perms.begin(), perms.end(), [x](Permutation const& p) { return p(x) == x; });
    if (fixed) out.push_back(x);
  }
  return out;
}

/// True iff every x in g maps `delta` onto itself or off itself.
inline bool is_block(PermutationGroup const& g, std::span<Element const> delta) {
  CIMLAB_REQUIRE(!delta.empty(), ErrorKind::invalid_argument, "block candidate must be nonempty");
  std::vector<char> in(g.degree(), 0);
  for (Element x : delta) in[x] = 1;
  for (auto const& p : g.elements()) {
    std::size_t inside = 0;
    for (Element x : delta) inside += in[p(x)];
    if (inside != 0 && inside != delta.size()) return false;
  }
  return true;
}

struct BlockSystem {
  std::size_t degree = 0;
  std::vector<std::vector<Element>> blocks;  // each sorted; sorted by first point

  std::size_t block_size() const { return blocks.empty() ? 0 : blocks.front().size(); }
  friend auto operator<=>(BlockSystem const&, BlockSystem const&) = default;
};

/// Finest block system in which `a` and `b` share a block.
inline BlockSystem block_system_generated_by(PermutationGroup const& g, Element a, Element b) {
  std::vector<Element> parent(g.degree());
  std::iota(parent.begin(), parent.end(), Element{0});
  std::function<Element(Element)> find = [&](Element x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::pair<Element, Element>> pending{{a, b}};
  parent[find(b)] = find(a);
  while (!pending.empty()) {
    auto [x, y] = pending.back();
    pending.pop_back();
    for (auto const& s : g.generators()) {
      Element rx = find(s(x)), ry = find(s(y));
      if (rx != ry) {
        parent[ry] = rx;
        pending.emplace_back(s(x), s(y));
      }
    }
  }
  std::map<Element, std::vector<Element>> cells;
  for (Element x = 0; x < g.degree(); ++x) cells[find(x)].push_back(x);
  BlockSystem sys;
  sys.degree = g.degree();
  for (auto& [root, cell] : cells) sys.blocks.push_back(std::move(cell));
  std::sort(sys.blocks.begin(), sys.blocks.end());
  return sys;
}

/// All nontrivial proper block systems of a transitive group, each generated by a pair {0, d}.
inline std::vector<BlockSystem> block_systems(PermutationGroup const& g) {
  CIMLAB_REQUIRE(is_transitive(g), ErrorKind::precondition, "block systems need a transitive group");
  std::set<BlockSystem> found;
  for (Element d = 1; d < g.degree(); ++d) {
    BlockSystem sys = block_system_generated_by(g, 0, d);
    if (sys.blocks.size() > 1) found.insert(std::move(sys));
  }
  std::vector<BlockSystem> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(), [](BlockSystem const& a, BlockSystem const& b) {
    return a.block_size() < b.block_size();
  });
  return out;
}

/// Two readings of "minimal imprimitivity system": minimal under refinement among the
/// nontrivial systems, or those with the smallest nontrivial block size.
enum class BlockMinimality { refinement, smallest_blocks };

inline bool refines(BlockSystem const& finer, BlockSystem const& coarser) {
  std::vector<std::size_t> owner(coarser.degree);
  for (std::size_t i = 0; i < coarser.blocks.size(); ++i) {
    for (Element x : coarser.blocks[i]) owner[x] = i;
  }
  for (auto const& b : finer.blocks) {
    for (Element x : b) {
      if (owner[x] != owner[b.front()]) return false;
    }
  }
  return true;
}

inline std::vector<BlockSystem> minimal_block_systems(PermutationGroup const& g,
                                                      BlockMinimality reading = BlockMinimality::refinement) {
  auto all = block_systems(g);
  std::vector<BlockSystem> out;
  if (all.empty()) return out;
  if (reading == BlockMinimality::smallest_blocks) {
    for (auto const& s : all) {
      if (s.block_size() == all.front().block_size()) out.push_back(s);
    }
    return out;
  }
  for (auto const& s : all) {
    bool minimal = std::none_of(all.begin(), all.end(), [&](BlockSystem const& t) {
      return t != s && t.block_size() < s.block_size() && refines(t, s);
    });
    if (minimal) out.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subgroup search inside an explicit permutation group

namespace detail {

/// Multiplication table over the sorted element list of a permutation group.
struct PermTable {
  std::size_t n = 0;
  std::vector<std::uint32_t> mul;  // mul[i*n+j] = index of e_i * e_j
  std::vector<std::uint32_t> inv;
  std::vector<std::size_t> order;
  std::vector<char> fixed_point_free;  // identity excluded

  explicit PermTable(PermutationGroup const& g) : n(g.order()) {
    auto const& el = g.elements();
    std::unordered_map<Permutation, std::uint32_t, PermutationHash> index;
    index.reserve(n * 2);
    for (std::size_t i = 0; i < n; ++i) index.emplace(el[i], static_cast<std::uint32_t>(i));
    mul.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        mul[i * n + j] = index.at(el[i] * el[j]);
      }
    }
    inv.resize(n);
    order.resize(n);
    fixed_point_free.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (mul[i * n + j] == 0) {
          inv[i] = static_cast<std::uint32_t>(j);
          break;
        }
      }
      order[i] = el[i].order();
      fixed_point_free[i] = i != 0 && el[i].is_fixed_point_free();
    }
  }

  std::uint32_t conj(std::uint32_t x, std::uint32_t a) const {  // x a x^-1
    return mul[mul[x * n + a] * n + inv[x]];
  }
};

inline std::vector<std::uint32_t> indices_in(PermutationGroup const& g, PermutationGroup const& sub) {
  std::vector<std::uint32_t> out;
  for (auto const& p : sub.elements()) {
    auto i = g.index_of(p);
    CIMLAB_REQUIRE(i.has_value(), ErrorKind::precondition, "subgroup is not contained in the group");
    out.push_back(static_cast<std::uint32_t>(*i));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// The abstract group on a sorted index subset of a PermTable (index 0 must be present).
inline FiniteGroup abstract_subgroup(PermTable const& t, std::vector<std::uint32_t> const& members) {
  std::size_t const k = members.size();
  std::unordered_map<std::uint32_t, Element> local;
  for (std::size_t i = 0; i < k; ++i) local.emplace(members[i], static_cast<Element>(i));
  std::vector<Element> flat(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) flat[i * k + j] = local.at(t.mul[members[i] * t.n + members[j]]);
  }
  return FiniteGroup("permutation subgroup", k, std::move(flat));
}

}  // namespace detail

/// All regular subgroups of g that are isomorphic to h, sorted by element set.
/// Search: grow semiregular subgroups by fixed-point-free generators whose generated
/// order divides |h|, deduplicating by element set.
inline std::vector<PermutationGroup> regular_subgroups_isomorphic_to(PermutationGroup const& g,
                                                                     FiniteGroup const& h,
                                                                     Caps const& caps = {}) {
  CIMLAB_REQUIRE(g.degree() == h.order(), ErrorKind::invalid_argument, "degree must equal |h|");
  CIMLAB_REQUIRE(g.order() <= caps.perm_group_order, ErrorKind::capacity,
                 "regular subgroup search limited to group order " + std::to_string(caps.perm_group_order));
  std::size_t const target = h.order();
  detail::PermTable t(g);
  auto const h_orders = order_statistics(h);

  std::vector<std::uint32_t> candidates;
  for (std::uint32_t x = 1; x < t.n; ++x) {
    if (t.fixed_point_free[x] && t.order[x] <= target && h_orders[t.order[x]] > 0) candidates.push_back(x);
  }

  std::set<std::vector<std::uint32_t>> visited;
  std::vector<std::vector<std::uint32_t>> found;
  std::vector<char> in(t.n, 0);

  // Closure of `base` plus x; empty result if it leaves the semiregular elements or grows past target.
  auto extend = [&](std::vector<std::uint32_t> const& base, std::uint32_t x) -> std::vector<std::uint32_t> {
    std::fill(in.begin(), in.end(), 0);
    std::vector<std::uint32_t> members = base;
    for (auto m : members) in[m] = 1;
    std::vector<std::uint32_t> all_gens = base;
    all_gens.push_back(x);
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (auto s : all_gens) {
        auto y = t.mul[members[i] * t.n + s];
        if (in[y]) continue;
        if (!t.fixed_point_free[y] || members.size() + 1 > target) return {};
        in[y] = 1;
        members.push_back(y);
      }
    }
    if (target % members.size() != 0) return {};
    std::sort(members.begin(), members.end());
    return members;
  };

  std::vector<std::vector<std::uint32_t>> stack{{0}};
  visited.insert({0});
  while (!stack.empty()) {
    auto cur = std::move(stack.back());
    stack.pop_back();
    if (cur.size() == target) {
      found.push_back(cur);
      continue;
    }
    for (auto x : candidates) {
      if (std::binary_search(cur.begin(), cur.end(), x)) continue;
      auto next = extend(cur, x);
      if (next.empty()) continue;
      if (visited.insert(next).second) stack.push_back(std::move(next));
    }
  }
  std::sort(found.begin(), found.end());

  std::vector<PermutationGroup> out;
  Caps iso_caps = caps;
  iso_caps.group_order = std::max(iso_caps.group_order, target);
  for (auto const& members : found) {
    FiniteGroup abstract = detail::abstract_subgroup(t, members);
    if (!is_isomorphic(abstract, h, iso_caps)) continue;
    std::vector<Permutation> elems;
    for (auto m : members) elems.push_back(g.elements()[m]);
    out.push_back(PermutationGroup::from_closed_elements(g.degree(), std::move(elems)));
  }
  std::sort(out.begin(), out.end(), [](PermutationGroup const& a, PermutationGroup const& b) {
    return a.elements() < b.elements();
  });
  return out;
}

/// Some x in g with x a x^-1 = b as element sets, first in g's sorted order.
inline std::optional<Permutation> are_conjugate_subgroups(PermutationGroup const& g,
                                                          PermutationGroup const& a,
                                                          PermutationGroup const& b) {
  if (a.order() != b.order()) return std::nullopt;
  detail::PermTable t(g);
  auto ai = detail::indices_in(g, a);
  auto bi = detail::indices_in(g, b);
  std::vector<char> in_b(t.n, 0);
  for (auto x : bi) in_b[x] = 1;
  for (std::uint32_t x = 0; x < t.n; ++x) {
    bool ok = std::all_of(ai.begin(), ai.end(), [&](std::uint32_t s) { return in_b[t.conj(x, s)]; });
    if (ok) return g.elements()[x];
  }
  return std::nullopt;
}

inline bool is_normal_subgroup(PermutationGroup const& g, PermutationGroup const& a) {
  for (auto const& x : g.generators()) {
    Permutation xi = x.inverse();
    for (auto const& s : a.generators()) {
      if (!a.contains(x * s * xi)) return false;
    }
  }
  return true;
}

inline bool is_cyclic_group(PermutationGroup const& g) {
  return std::any_of(g.elements().begin(), g.elements().end(),
                     [&](Permutation const& p) { return p.order() == g.order(); });
}

/// The permutation group as an abstract group on its sorted element indices.
inline FiniteGroup as_abstract_group(PermutationGroup const& g) {
  detail::PermTable t(g);
  std::vector<std::uint32_t> all(t.n);
  std::iota(all.begin(), all.end(), 0u);
  return detail::abstract_subgroup(t, all);
}

}  // namespace cimlab
