#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cimlab/error.hpp"

namespace cimlab {

/// Dense element index; the identity of every group is pinned to 0.
using Element = std::uint32_t;

inline constexpr Element kNoElement = static_cast<Element>(-1);

/// Explicit enumeration limits. Exceeding one raises ErrorKind::capacity, never truncates.
struct Caps {
  std::size_t group_order = 64;          // subgroup and automorphism enumeration
  std::size_t perm_group_order = 20000;  // permutation group closure
  std::size_t definitional_maps = 200000;  // maps compared by the definitional oracle
  std::size_t enumerated_maps = 2000000;   // maps materialized by enumerate_cayley_maps
};

namespace detail {

inline std::optional<std::string> table_defect(std::size_t n, std::vector<Element> const& t) {
  if (n == 0) return "empty group";
  if (t.size() != n * n) return "table size is not order^2";
  for (Element v : t) {
    if (v >= n) return "table entry out of range";
  }
  for (std::size_t g = 0; g < n; ++g) {
    if (t[g] != g || t[g * n] != g) return "element 0 is not the identity";
  }
  std::vector<char> seen(n);
  for (std::size_t r = 0; r < n; ++r) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t c = 0; c < n; ++c) {
      if (seen[t[r * n + c]]++) return "row " + std::to_string(r) + " is not a permutation";
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t r = 0; r < n; ++r) {
      if (seen[t[r * n + c]]++) return "column " + std::to_string(c) + " is not a permutation";
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t const ab = t[a * n + b];
      for (std::size_t c = 0; c < n; ++c) {
        if (t[ab * n + c] != t[a * n + t[b * n + c]]) return "multiplication is not associative";
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// A finite group given by its full multiplication table over indices 0..n-1.
class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup("trivial", 1, std::vector<Element>{0}) {}

  FiniteGroup(std::string name, std::size_t order, std::vector<Element> flat_table)
      : n_(order), table_(std::move(flat_table)), name_(std::move(name)) {
    auto defect = detail::table_defect(n_, table_);
    CIMLAB_REQUIRE(!defect, ErrorKind::invalid_argument, "not a group table: " + defect.value_or(""));
    build_inverses();
  }

  FiniteGroup(std::string name, std::vector<std::vector<Element>> const& rows)
      : FiniteGroup(std::move(name), rows.size(), flatten(rows)) {}

  std::size_t order() const noexcept { return n_; }
  std::string const& name() const noexcept { return name_; }
  void rename(std::string name) { name_ = std::move(name); }

  Element mul(Element a, Element b) const { return table_[a * n_ + b]; }
  Element inv(Element a) const { return inverse_[a]; }
  static constexpr Element identity() noexcept { return 0; }

  Element pow(Element a, long long k) const {
    if (k < 0) {
      a = inv(a);
      k = -k;
    }
    Element r = 0;
    for (long long i = 0; i < k; ++i) r = mul(r, a);
    return r;
  }

  std::span<Element const> flat_table() const noexcept { return table_; }

  std::vector<std::vector<Element>> table() const {
    std::vector<std::vector<Element>> rows(n_);
    for (std::size_t r = 0; r < n_; ++r) {
      rows[r].assign(table_.begin() + static_cast<long>(r * n_),
                     table_.begin() + static_cast<long>((r + 1) * n_));
    }
    return rows;
  }

  bool same_table(FiniteGroup const& other) const noexcept {
    return n_ == other.n_ && table_ == other.table_;
  }

 private:
  static std::vector<Element> flatten(std::vector<std::vector<Element>> const& rows) {
    std::vector<Element> flat;
    flat.reserve(rows.size() * rows.size());
    for (auto const& r : rows) {
      CIMLAB_REQUIRE(r.size() == rows.size(), ErrorKind::invalid_argument, "table is not square");
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return flat;
  }

  void build_inverses() {
    inverse_.assign(n_, 0);
    for (Element g = 0; g < n_; ++g) {
      for (Element h = 0; h < n_; ++h) {
        if (mul(g, h) == 0) {
          inverse_[g] = h;
          break;
        }
      }
    }
  }

  std::size_t n_;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
  std::string name_;
};

/// Checks the four table invariants: identity law, inverses, Latin square, associativity.
inline bool check_group_axioms(FiniteGroup const& g) {
  std::vector<Element> flat(g.flat_table().begin(), g.flat_table().end());
  if (detail::table_defect(g.order(), flat)) return false;
  for (Element x = 0; x < g.order(); ++x) {
    if (g.mul(x, g.inv(x)) != 0) return false;
  }
  return true;
}

/// A bijection between two groups, stored as the image of each source index.
struct GroupIsomorphism {
  std::vector<Element> images;

  Element operator()(Element x) const { return images[x]; }
  std::size_t size() const noexcept { return images.size(); }
  friend auto operator<=>(GroupIsomorphism const&, GroupIsomorphism const&) = default;
};

inline GroupIsomorphism identity_isomorphism(std::size_t n) {
  GroupIsomorphism id;
  id.images.resize(n);
  std::iota(id.images.begin(), id.images.end(), Element{0});
  return id;
}

/// (a ∘ b)(x) = a(b(x)).
inline GroupIsomorphism compose(GroupIsomorphism const& a, GroupIsomorphism const& b) {
  GroupIsomorphism c;
  c.images.resize(b.size());
  for (std::size_t x = 0; x < b.size(); ++x) c.images[x] = a.images[b.images[x]];
  return c;
}

inline GroupIsomorphism inverse(GroupIsomorphism const& a) {
  GroupIsomorphism r;
  r.images.resize(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) r.images[a.images[x]] = static_cast<Element>(x);
  return r;
}

inline bool is_group_isomorphism(FiniteGroup const& src, FiniteGroup const& dst,
                                 GroupIsomorphism const& f) {
  if (src.order() != dst.order() || f.size() != src.order()) return false;
  if (f(0) != 0) return false;
  std::vector<char> hit(dst.order());
  for (Element v : f.images) {
    if (v >= dst.order() || hit[v]++) return false;
  }
  for (Element a = 0; a < src.order(); ++a) {
    for (Element b = 0; b < src.order(); ++b) {
      if (f(src.mul(a, b)) != dst.mul(f(a), f(b))) return false;
    }
  }
  return true;
}

/// Least k >= 1 with x^k = identity.
inline std::size_t element_order(FiniteGroup const& g, Element x) {
  CIMLAB_REQUIRE(x < g.order(), ErrorKind::invalid_argument, "element out of range");
  std::size_t k = 1;
  for (Element y = x; y != 0; y = g.mul(y, x)) ++k;
  return k;
}

inline std::vector<std::size_t> order_statistics(FiniteGroup const& g) {
  std::vector<std::size_t> hist(g.order() + 1, 0);
  for (Element x = 0; x < g.order(); ++x) ++hist[element_order(g, x)];
  return hist;
}

inline bool is_abelian(FiniteGroup const& g) {
  for (Element a = 0; a < g.order(); ++a) {
    for (Element b = a + 1; b < g.order(); ++b) {
      if (g.mul(a, b) != g.mul(b, a)) return false;
    }
  }
  return true;
}

inline bool is_cyclic(FiniteGroup const& g) {
  for (Element x = 0; x < g.order(); ++x) {
    if (element_order(g, x) == g.order()) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Subgroups

/// A subgroup as a sorted member list; always contains 0.
struct Subgroup {
  std::vector<Element> members;

  std::size_t order() const noexcept { return members.size(); }
  bool contains(Element x) const { return std::binary_search(members.begin(), members.end(), x); }
  friend auto operator<=>(Subgroup const&, Subgroup const&) = default;
};

/// Subgroup generated by `gens`, by breadth-first right multiplication.
inline Subgroup generated_subgroup(FiniteGroup const& g, std::span<Element const> gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<Element> members{0};
  in[0] = 1;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (Element s : gens) {
      Element y = g.mul(members[i], s);
      if (!in[y]) {
        in[y] = 1;
        members.push_back(y);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return Subgroup{std::move(members)};
}

inline Subgroup generated_subgroup(FiniteGroup const& g, std::initializer_list<Element> gens) {
  std::vector<Element> v(gens);
  return generated_subgroup(g, std::span<Element const>(v));
}

inline bool is_subgroup(FiniteGroup const& g, std::span<Element const> members) {
  if (members.empty()) return false;
  std::vector<char> in(g.order(), 0);
  for (Element x : members) {
    if (x >= g.order()) return false;
    in[x] = 1;
  }
  if (!in[0]) return false;
  for (Element a : members) {
    if (!in[g.inv(a)]) return false;
    for (Element b : members) {
      if (!in[g.mul(a, b)]) return false;
    }
  }
  return true;
}

inline bool is_normal(FiniteGroup const& g, Subgroup const& sub) {
  std::vector<char> in(g.order(), 0);
  for (Element x : sub.members) in[x] = 1;
  for (Element x = 0; x < g.order(); ++x) {
    for (Element s : sub.members) {
      if (!in[g.mul(g.mul(x, s), g.inv(x))]) return false;
    }
  }
  return true;
}

/// The subgroup relabelled as a group in its own right. Index i of the result is
/// `sub.members[i]` of the parent; the returned vector is that embedding.
inline std::pair<FiniteGroup, std::vector<Element>> subgroup_as_group(FiniteGroup const& g,
                                                                      Subgroup const& sub,
                                                                      std::string name = {}) {
  std::size_t const k = sub.order();
  std::vector<Element> local(g.order(), kNoElement);
  for (std::size_t i = 0; i < k; ++i) local[sub.members[i]] = static_cast<Element>(i);
  std::vector<Element> flat(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      Element p = local[g.mul(sub.members[i], sub.members[j])];
      CIMLAB_REQUIRE(p != kNoElement, ErrorKind::invalid_argument, "member list is not closed");
      flat[i * k + j] = p;
    }
  }
  if (name.empty()) name = "subgroup of order " + std::to_string(k) + " in " + g.name();
  return {FiniteGroup(std::move(name), k, std::move(flat)), sub.members};
}

/// Greedy generating set: repeatedly add the element that enlarges the generated subgroup most.
inline std::vector<Element> small_generating_set(FiniteGroup const& g) {
  std::vector<Element> gens;
  Subgroup cur{{0}};
  while (cur.order() < g.order()) {
    Element best = 0;
    std::size_t best_size = 0;
    for (Element x = 1; x < g.order(); ++x) {
      if (cur.contains(x)) continue;
      auto trial = gens;
      trial.push_back(x);
      std::size_t sz = generated_subgroup(g, std::span<Element const>(trial)).order();
      if (sz > best_size) {
        best_size = sz;
        best = x;
      }
    }
    gens.push_back(best);
    cur = generated_subgroup(g, std::span<Element const>(gens));
  }
  return gens;
}

/// All subgroups, by cyclic extension: every subgroup is a join of cyclic subgroups.
/// Sorted by (order, members).
inline std::vector<Subgroup> all_subgroups(FiniteGroup const& g, Caps const& caps = {}) {
  CIMLAB_REQUIRE(g.order() <= caps.group_order, ErrorKind::capacity,
                 "subgroup enumeration limited to order " + std::to_string(caps.group_order));
  std::set<std::vector<Element>> seen;
  std::vector<std::pair<Subgroup, std::vector<Element>>> work;  // subgroup + its generators
  for (Element x = 0; x < g.order(); ++x) {
    std::vector<Element> gens;
    if (x != 0) gens.push_back(x);
    Subgroup s = generated_subgroup(g, std::span<Element const>(gens));
    if (seen.insert(s.members).second) work.emplace_back(std::move(s), std::move(gens));
  }
  for (std::size_t i = 0; i < work.size(); ++i) {
    for (Element x = 1; x < g.order(); ++x) {
      if (work[i].first.contains(x)) continue;
      auto gens = work[i].second;
      gens.push_back(x);
      Subgroup s = generated_subgroup(g, std::span<Element const>(gens));
      if (seen.insert(s.members).second) work.emplace_back(std::move(s), std::move(gens));
    }
  }
  std::vector<Subgroup> out;
  out.reserve(work.size());
  for (auto& w : work) out.push_back(std::move(w.first));
  std::sort(out.begin(), out.end(), [](Subgroup const& a, Subgroup const& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.members < b.members;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Homomorphism search

namespace detail {

/// Extends gens[i] -> imgs[i] over <gens> by right multiplication. Fails on any
/// inconsistency or collision. `map` and `used` are scratch of size |a| and |b|.
inline bool extend_homomorphism(FiniteGroup const& a, FiniteGroup const& b,
                                std::span<Element const> gens, std::span<Element const> imgs,
                                std::vector<Element>& map, std::vector<char>& used) {
  std::fill(map.begin(), map.end(), kNoElement);
  std::fill(used.begin(), used.end(), 0);
  std::vector<Element> queue{0};
  map[0] = 0;
  used[0] = 1;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    Element x = queue[q];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Element y = a.mul(x, gens[i]);
      Element t = b.mul(map[x], imgs[i]);
      if (map[y] == kNoElement) {
        if (used[t]) return false;
        used[t] = 1;
        map[y] = t;
        queue.push_back(y);
      } else if (map[y] != t) {
        return false;
      }
    }
  }
  return true;
}

/// Enumerates injective homomorphisms a -> b that are bijections (|a| = |b|), calling
/// `visit(images)` in backtracking order; `visit` returns false to stop.
template <typename Visit>
void for_each_isomorphism(FiniteGroup const& a, FiniteGroup const& b, Visit&& visit) {
  if (a.order() != b.order()) return;
  std::vector<Element> const gens = small_generating_set(a);
  std::vector<std::size_t> gen_order(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) gen_order[i] = element_order(a, gens[i]);
  std::vector<std::size_t> b_order(b.order());
  for (Element x = 0; x < b.order(); ++x) b_order[x] = element_order(b, x);

  std::vector<Element> imgs(gens.size(), 0);
  std::vector<Element> map(a.order());
  std::vector<char> used(b.order());
  bool stop = false;

  auto rec = [&](auto&& self, std::size_t level) -> void {
    if (stop) return;
    if (level == gens.size()) {
      if (!extend_homomorphism(a, b, gens, imgs, map, used)) return;
      if (std::find(map.begin(), map.end(), kNoElement) != map.end()) return;
      if (!visit(map)) stop = true;
      return;
    }
    for (Element t = 0; t < b.order() && !stop; ++t) {
      if (b_order[t] != gen_order[level]) continue;
      imgs[level] = t;
      std::span<Element const> g_prefix(gens.data(), level + 1);
      std::span<Element const> i_prefix(imgs.data(), level + 1);
      if (!extend_homomorphism(a, b, g_prefix, i_prefix, map, used)) continue;
      self(self, level + 1);
    }
  };
  rec(rec, 0);
}

}  // namespace detail

/// All automorphisms, sorted lexicographically by image list (identity first).
inline std::vector<GroupIsomorphism> automorphisms(FiniteGroup const& g, Caps const& caps = {}) {
  CIMLAB_REQUIRE(g.order() <= caps.group_order, ErrorKind::capacity,
                 "automorphism enumeration limited to order " + std::to_string(caps.group_order));
  std::vector<GroupIsomorphism> out;
  detail::for_each_isomorphism(g, g, [&](std::vector<Element> const& m) {
    out.push_back(GroupIsomorphism{m});
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

/// First isomorphism g1 -> g2 in backtracking order, or nothing.
inline std::optional<GroupIsomorphism> is_isomorphic(FiniteGroup const& g1, FiniteGroup const& g2,
                                                     Caps const& caps = {}) {
  CIMLAB_REQUIRE(g1.order() <= caps.group_order && g2.order() <= caps.group_order,
                 ErrorKind::capacity,
                 "isomorphism testing limited to order " + std::to_string(caps.group_order));
  if (g1.order() != g2.order()) return std::nullopt;
  if (order_statistics(g1) != order_statistics(g2)) return std::nullopt;
  if (is_abelian(g1) != is_abelian(g2)) return std::nullopt;
  std::optional<GroupIsomorphism> found;
  detail::for_each_isomorphism(g1, g2, [&](std::vector<Element> const& m) {
    found = GroupIsomorphism{m};
    return false;
  });
  return found;
}

/// The group automorphism determined by images of a generating list, if it is one.
inline std::optional<GroupIsomorphism> automorphism_from_generators(FiniteGroup const& g,
                                                                    std::span<Element const> gens,
                                                                    std::span<Element const> imgs) {
  std::vector<Element> map(g.order());
  std::vector<char> used(g.order());
  if (!detail::extend_homomorphism(g, g, gens, imgs, map, used)) return std::nullopt;
  if (std::find(map.begin(), map.end(), kNoElement) != map.end()) return std::nullopt;
  return GroupIsomorphism{map};
}

// ---------------------------------------------------------------------------
// Constructors

inline FiniteGroup make_cyclic(std::size_t n) {
  CIMLAB_REQUIRE(n >= 1, ErrorKind::invalid_order, "cyclic group needs order >= 1");
  std::vector<Element> flat(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = static_cast<Element>((i + j) % n);
  }
  return FiniteGroup("Z" + std::to_string(n), n, std::move(flat));
}

/// g1 x g2 with index a + |g1|*b.
inline FiniteGroup direct_product(FiniteGroup const& g1, FiniteGroup const& g2) {
  std::size_t const n1 = g1.order(), n2 = g2.order(), n = n1 * n2;
  std::vector<Element> flat(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      Element a = g1.mul(static_cast<Element>(x % n1), static_cast<Element>(y % n1));
      Element b = g2.mul(static_cast<Element>(x / n1), static_cast<Element>(y / n1));
      flat[x * n + y] = static_cast<Element>(a + n1 * b);
    }
  }
  std::string name;
  if (n1 == 1) {
    name = g2.name();
  } else if (n2 == 1) {
    name = g1.name();
  } else {
    name = g1.name() + "x" + g2.name();
  }
  return FiniteGroup(std::move(name), n, std::move(flat));
}

/// Product of cyclic factors; the first factor is the least significant digit of the index.
inline FiniteGroup make_abelian(std::vector<std::size_t> const& orders) {
  FiniteGroup g = make_cyclic(1);
  std::string name;
  for (std::size_t k : orders) {
    CIMLAB_REQUIRE(k >= 1, ErrorKind::invalid_order, "abelian factor order must be >= 1");
    g = direct_product(g, make_cyclic(k));
    name += (name.empty() ? "" : "x") + ("Z" + std::to_string(k));
  }
  if (!name.empty()) g.rename(name);
  return g;
}

/// Q_{2^k} = <c, a | c^(2^(k-1)) = 1, a^2 = c^(2^(k-2)), a c a^-1 = c^-1>, element c^i a^j
/// at index i + 2^(k-1) * j.
inline FiniteGroup make_generalized_quaternion(std::size_t order) {
  CIMLAB_REQUIRE(order >= 8 && (order & (order - 1)) == 0, ErrorKind::invalid_order,
                 "generalized quaternion order must be a power of two >= 8");
  std::size_t const half = order / 2, quarter = order / 4;
  std::vector<Element> flat(order * order);
  for (std::size_t x = 0; x < order; ++x) {
    std::size_t i = x % half, j = x / half;
    for (std::size_t y = 0; y < order; ++y) {
      std::size_t k = y % half, l = y / half;
      // c^i a^j c^k a^l = c^(i + (-1)^j k) a^(j+l), with a^2 = c^quarter
      std::size_t e = j == 0 ? (i + k) % half : (i + half - k) % half;
      std::size_t jl = j + l;
      if (jl == 2) {
        e = (e + quarter) % half;
        jl = 0;
      }
      flat[x * order + y] = static_cast<Element>(e + half * jl);
    }
  }
  return FiniteGroup("Q" + std::to_string(order), order, std::move(flat));
}

/// K ⋊ Z_m with (k1, c^i)(k2, c^j) = (k1 * action^i(k2), c^(i+j)); index k + |K| * i.
inline FiniteGroup make_semidirect(FiniteGroup const& k_group, std::size_t c_order,
                                   GroupIsomorphism const& action) {
  CIMLAB_REQUIRE(c_order >= 1, ErrorKind::invalid_order, "complement order must be >= 1");
  std::size_t const nk = k_group.order();
  CIMLAB_REQUIRE(is_group_isomorphism(k_group, k_group, action), ErrorKind::invalid_action,
                 "action is not an automorphism of the normal factor");
  // powers[i] = action^i
  std::vector<GroupIsomorphism> powers{identity_isomorphism(nk)};
  for (std::size_t i = 1; i <= c_order; ++i) powers.push_back(compose(action, powers.back()));
  CIMLAB_REQUIRE(powers[c_order] == identity_isomorphism(nk), ErrorKind::invalid_action,
                 "action order does not divide the complement order");
  std::size_t const n = nk * c_order;
  std::vector<Element> flat(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    Element k1 = static_cast<Element>(x % nk);
    std::size_t i = x / nk;
    for (std::size_t y = 0; y < n; ++y) {
      Element k2 = static_cast<Element>(y % nk);
      std::size_t j = y / nk;
      Element k = k_group.mul(k1, powers[i](k2));
      flat[x * n + y] = static_cast<Element>(k + nk * ((i + j) % c_order));
    }
  }
  std::string name = c_order == 1 ? k_group.name() : k_group.name() + ":Z" + std::to_string(c_order);
  return FiniteGroup(std::move(name), n, std::move(flat));
}

/// x -> x^k; an automorphism of an abelian group when gcd(k, exponent) = 1.
inline GroupIsomorphism power_map(FiniteGroup const& g, long long k) {
  GroupIsomorphism f;
  f.images.resize(g.order());
  for (Element x = 0; x < g.order(); ++x) f.images[x] = g.pow(x, k);
  return f;
}

/// Dihedral group of order 2n as Z_n ⋊ Z_2 with inversion.
inline FiniteGroup make_dihedral(std::size_t n) {
  CIMLAB_REQUIRE(n >= 1, ErrorKind::invalid_order, "dihedral group needs n >= 1");
  FiniteGroup z = make_cyclic(n);
  FiniteGroup d = make_semidirect(z, 2, power_map(z, -1));
  d.rename("D" + std::to_string(n));
  return d;
}

// ---------------------------------------------------------------------------
// Class M: Z_n x Z_2^r, Z_n x Z_4, Z_n x Q_8 with n odd square-free.

inline bool is_odd_square_free(std::size_t n) {
  if (n % 2 == 0) return false;
  for (std::size_t p = 3; p * p <= n; p += 2) {
    if (n % (p * p) == 0) return false;
  }
  return true;
}

inline bool in_class_m(FiniteGroup const& g, Caps const& caps = {}) {
  std::size_t n = g.order(), e = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++e;
  }
  if (!is_odd_square_free(n)) return false;
  std::vector<FiniteGroup> candidates;
  candidates.push_back(direct_product(make_cyclic(n), make_abelian(std::vector<std::size_t>(e, 2))));
  if (e == 2) candidates.push_back(direct_product(make_cyclic(n), make_cyclic(4)));
  if (e == 3) candidates.push_back(direct_product(make_cyclic(n), make_generalized_quaternion(8)));
  Caps big = caps;
  big.group_order = std::max(big.group_order, g.order());
  return std::any_of(candidates.begin(), candidates.end(),
                     [&](FiniteGroup const& c) { return is_isomorphic(g, c, big).has_value(); });
}

}  // namespace cimlab
