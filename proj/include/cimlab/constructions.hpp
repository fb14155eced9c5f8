#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "cimlab/cayley_map.hpp"
#include "cimlab/error.hpp"
#include "cimlab/group.hpp"
#include "cimlab/map_iso.hpp"
#include "cimlab/perm.hpp"

namespace cimlab {

/// A map together with a claimed subgroup of its automorphism group and a rival H-regular
/// subgroup inside it.
struct WitnessedMap {
  CayleyMap map;
  PermutationGroup ambient;
  PermutationGroup rival;
  std::string notes;
};

namespace detail {

inline bool is_prime(std::size_t p) {
  if (p < 2) return false;
  for (std::size_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

inline Permutation as_permutation(GroupIsomorphism const& a) { return Permutation(a.images); }

/// The cycle of x under a, starting at x.
inline std::vector<Element> cycle_of(GroupIsomorphism const& a, Element x) {
  std::vector<Element> out{x};
  for (Element y = a(x); y != x; y = a(y)) out.push_back(y);
  return out;
}

inline PermutationGroup extend_regular(FiniteGroup const& h, std::vector<Permutation> extra, Caps const& caps) {
  auto gens = left_regular_representation(h).generators();
  gens.insert(gens.end(), extra.begin(), extra.end());
  return closure(gens, h.order(), caps.perm_group_order);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Odd prime squares

enum class SquareKind { cyclic, elementary };

struct OddSquareData {
  GroupPtr group;
  GroupIsomorphism alpha;  // x -> -beta(x)
};

inline OddSquareData odd_square_data(std::size_t p, SquareKind kind) {
  CIMLAB_REQUIRE(p % 2 == 1 && detail::is_prime(p), ErrorKind::invalid_argument, "p must be an odd prime");
  CIMLAB_REQUIRE(p <= 7, ErrorKind::capacity, "odd square construction limited to p <= 7");
  OddSquareData d;
  if (kind == SquareKind::cyclic) {
    std::size_t const n = p * p;
    d.group = share(make_cyclic(n));
    d.alpha.images.resize(n);
    for (std::size_t x = 0; x < n; ++x) d.alpha.images[x] = static_cast<Element>((n - (1 + p) * x % n) % n);
  } else {
    d.group = share(make_abelian({p, p}));
    d.alpha.images.resize(p * p);
    for (std::size_t y = 0; y < p; ++y) {
      for (std::size_t x = 0; x < p; ++x) {
        std::size_t nx = (2 * p - (x + y) % p) % p, ny = (p - y) % p;
        d.alpha.images[x + p * y] = static_cast<Element>(nx + p * ny);
      }
    }
  }
  return d;
}

/// Least elements of the alpha-orbits of length 2p, ascending.
inline std::vector<Element> odd_square_orbit_seeds(std::size_t p, SquareKind kind) {
  auto const d = odd_square_data(p, kind);
  std::vector<char> seen(d.group->order(), 0);
  std::vector<Element> seeds;
  for (Element x = 1; x < d.group->order(); ++x) {
    if (seen[x]) continue;
    auto cyc = detail::cycle_of(d.alpha, x);
    for (Element y : cyc) seen[y] = 1;
    if (cyc.size() == 2 * p) seeds.push_back(x);
  }
  return seeds;
}

/// CM(K, S, alpha|_S) with S the alpha-orbit of `seed` (default: the least seed of a 2p-orbit).
/// Rival: <gamma>, gamma(x) = (1+p)x + 1, or T = {(x,y) -> (x + ay + b, y + a)}.
inline WitnessedMap odd_square_map(std::size_t p, SquareKind kind, std::optional<Element> seed = std::nullopt,
                                   Caps const& caps = {}) {
  auto const d = odd_square_data(p, kind);
  auto const seeds = odd_square_orbit_seeds(p, kind);
  Element const s0 = seed.value_or(seeds.front());
  CIMLAB_REQUIRE(std::find(seeds.begin(), seeds.end(), s0) != seeds.end(), ErrorKind::invalid_argument,
                 "seed does not lie in an orbit of length 2p");
  CayleyMap m(d.group, detail::cycle_of(d.alpha, s0));
  std::size_t const n = d.group->order();
  PermutationGroup ambient = detail::extend_regular(*d.group, {detail::as_permutation(d.alpha)}, caps);

  std::vector<Permutation> rival_gens;
  if (kind == SquareKind::cyclic) {
    std::vector<Element> g(n);
    for (std::size_t x = 0; x < n; ++x) g[x] = static_cast<Element>(((1 + p) * x + 1) % n);
    rival_gens.emplace_back(std::move(g));
  } else {
    for (auto [a, b] : {std::pair<std::size_t, std::size_t>{1, 0}, {0, 1}}) {
      std::vector<Element> t(n);
      for (std::size_t y = 0; y < p; ++y) {
        for (std::size_t x = 0; x < p; ++x) t[x + p * y] = static_cast<Element>((x + a * y + b) % p + p * ((y + a) % p));
      }
      rival_gens.emplace_back(std::move(t));
    }
  }
  PermutationGroup rival = closure(rival_gens, n, caps.perm_group_order);
  std::string notes = kind == SquareKind::cyclic ? "K = Z_" + std::to_string(n) + ", alpha(x) = -(1+p)x"
                                                 : "K = Z_" + std::to_string(p) + "^2, alpha(x,y) = (-x-y, -y)";
  return WitnessedMap{std::move(m), std::move(ambient), std::move(rival), std::move(notes)};
}

// ---------------------------------------------------------------------------
// Cyclic 2-groups

/// Over Z_{2^n}, a = 1 + 2^(n-1): rotation (1, -1, 3, -3a, a, -a, 3a, -3); ambient Z^ x| <x -> ax>,
/// rival <x -> ax + 1>.
inline WitnessedMap cyclic_2power_map(std::size_t n, Caps const& caps = {}) {
  CIMLAB_REQUIRE(n >= 4, ErrorKind::invalid_argument, "cyclic 2-power construction needs n >= 4");
  CIMLAB_REQUIRE(n <= 6, ErrorKind::capacity, "cyclic 2-power construction limited to n <= 6");
  std::size_t const N = std::size_t{1} << n;
  std::size_t const a = 1 + N / 2;
  auto neg = [&](std::size_t x) { return (N - x % N) % N; };
  std::vector<std::size_t> raw{1, neg(1), 3, neg(3 * a), a, neg(a), 3 * a % N, neg(3)};
  std::vector<Element> rot(raw.begin(), raw.end());
  auto h = share(make_cyclic(N));
  CayleyMap m(h, std::move(rot));
  std::vector<Element> alpha(N), one_alpha(N);
  for (std::size_t x = 0; x < N; ++x) {
    alpha[x] = static_cast<Element>(a * x % N);
    one_alpha[x] = static_cast<Element>((a * x + 1) % N);
  }
  PermutationGroup ambient = detail::extend_regular(*h, {Permutation(alpha)}, caps);
  PermutationGroup rival = closure({Permutation(one_alpha)}, N, caps.perm_group_order);
  return WitnessedMap{std::move(m), std::move(ambient), std::move(rival),
                      "a = " + std::to_string(a) + ", alpha(x) = ax, rival generated by x -> ax + 1"};
}

/// {x : |S cap (S + x)| = target}, ascending; S + x is right translation.
inline std::vector<Element> translation_overlap_set(CayleyMap const& m, std::size_t target) {
  auto const& h = m.group();
  std::vector<Element> out;
  for (Element x = 0; x < h.order(); ++x) {
    std::size_t c = 0;
    for (Element s : m.rotation()) c += m.in_connection_set(h.mul(s, x));
    if (c == target) out.push_back(x);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Q_16

struct Quaternion16Witness {
  GroupPtr q16;
  Subgroup quaternion_subgroup;  // <a, c^2>
  Subgroup cyclic_subgroup;      // <c>
  CayleyMap map;                 // over <a, c^2>, local indices
  CayleyMap cyclic_map;          // over <c>, local indices
  GroupIsomorphism alpha;        // automorphism of <a, c^2> with alpha|_S = rho
  Permutation relabel;           // vertex bijection of map onto cyclic_map
};

/// M over <a, c^2> with rho = (a, c^2, a^-1, c^-2) and its relabelling M' over <c> along the
/// regular action of a^ alpha.
inline Quaternion16Witness quaternion16_witness() {
  auto q16 = share(make_generalized_quaternion(16));
  Element const c = 1, a = 8;
  Subgroup qs = generated_subgroup(*q16, {a, q16->pow(c, 2)});
  Subgroup cs = generated_subgroup(*q16, {c});
  auto [qg, qemb] = subgroup_as_group(*q16, qs, "Q8");
  auto [cg, cemb] = subgroup_as_group(*q16, cs, "Z8");
  GroupPtr qp = share(std::move(qg));
  GroupPtr cp = share(std::move(cg));
  auto local = [&](std::vector<Element> const& emb, Element x) {
    return static_cast<Element>(std::lower_bound(emb.begin(), emb.end(), x) - emb.begin());
  };
  Element const la = local(qemb, a), lc2 = local(qemb, q16->pow(c, 2));
  CayleyMap m(qp, {la, lc2, qp->inv(la), qp->inv(lc2)});
  std::vector<Element> gens{la, lc2}, imgs{lc2, qp->inv(la)};
  auto alpha = automorphism_from_generators(*qp, gens, imgs);
  CIMLAB_REQUIRE(alpha.has_value(), ErrorKind::precondition, "a -> c^2, c^2 -> a^-1 is not an automorphism");

  // g = a^ alpha acts regularly; theta(c^i) = g^i(e), and c^i has local index i in <c>
  std::vector<Element> g(qp->order());
  for (Element x = 0; x < qp->order(); ++x) g[x] = qp->mul(la, (*alpha)(x));
  Permutation gp(std::move(g));
  std::vector<Element> theta(cp->order());
  Element v = 0;
  for (std::size_t i = 0; i < cp->order(); ++i) {
    CIMLAB_REQUIRE(cemb[i] == q16->pow(c, static_cast<long long>(i)), ErrorKind::precondition,
                   "unexpected labelling of <c>");
    theta[i] = v;
    v = gp(v);
  }
  Permutation th(std::move(theta));
  Permutation th_inv = th.inverse();
  std::vector<Element> rot;
  for (Element s : m.rotation()) rot.push_back(th_inv(s));
  CayleyMap mp(cp, std::move(rot));
  return Quaternion16Witness{q16, qs, cs, std::move(m), std::move(mp), *alpha, th_inv};
}

// ---------------------------------------------------------------------------
// Frobenius-type maps over K x| Z_m

struct FrobeniusData {
  std::vector<Element> orbit;  // k_i = sigma^i(k) as elements of H
  Element c = 0;
  std::size_t ell = 0;
  Permutation sigma;  // conjugation by c on H
};

struct FrobeniusMap {
  WitnessedMap witnessed;
  FrobeniusData data;
};

/// H = K x| <c>, S = cO for the sigma-orbit O of k, rotation
/// (ck_0, (ck_l)^-1, ck_1, (ck_{l+1})^-1, ...) with l = (m+1)/2 and indices mod m,
/// so that rho^2 = sigma on S u S^-1. Rival: {x -> h x pi(h)}, pi the projection onto <c>.
inline FrobeniusMap frobenius_map(std::size_t m, FiniteGroup const& k_group, GroupIsomorphism const& action,
                                  Element k, Caps const& caps = {}) {
  CIMLAB_REQUIRE(m % 2 == 1 && m >= 3, ErrorKind::invalid_argument, "complement order must be odd and >= 3");
  CIMLAB_REQUIRE(k < k_group.order(), ErrorKind::invalid_argument, "seed outside the normal factor");
  auto h = share(make_semidirect(k_group, m, action));
  std::size_t const nk = k_group.order();
  {
    auto power = identity_isomorphism(nk);
    for (std::size_t i = 1; i < m; ++i) {
      power = compose(action, power);
      CIMLAB_REQUIRE(!(power == identity_isomorphism(nk)), ErrorKind::invalid_action,
                     "action order is smaller than the complement order");
    }
  }
  FrobeniusData d;
  d.c = static_cast<Element>(nk);
  d.ell = (m + 1) / 2;
  std::vector<Element> sigma(h->order());
  for (Element x = 0; x < h->order(); ++x) sigma[x] = h->mul(h->mul(d.c, x), h->inv(d.c));
  d.sigma = Permutation(std::move(sigma));
  d.orbit.push_back(k);
  for (std::size_t i = 1; i < m; ++i) d.orbit.push_back(d.sigma(d.orbit.back()));
  CIMLAB_REQUIRE(d.sigma(d.orbit.back()) == k, ErrorKind::orbit_not_faithful, "orbit of the seed is not of size m");
  std::vector<Element> sorted_orbit = d.orbit;
  std::sort(sorted_orbit.begin(), sorted_orbit.end());
  CIMLAB_REQUIRE(std::adjacent_find(sorted_orbit.begin(), sorted_orbit.end()) == sorted_orbit.end(),
                 ErrorKind::orbit_not_faithful, "orbit of the seed is not of size m");
  std::vector<Element> diffs;
  for (Element x : d.orbit) {
    for (Element y : d.orbit) diffs.push_back(h->mul(x, h->inv(y)));
  }
  CIMLAB_REQUIRE(generated_subgroup(*h, std::span<Element const>(diffs)).order() == nk,
                 ErrorKind::generation_condition, "O O^-1 does not generate the normal factor");

  std::vector<Element> rot;
  for (std::size_t i = 0; i < m; ++i) {
    rot.push_back(h->mul(d.c, d.orbit[i]));
    rot.push_back(h->inv(h->mul(d.c, d.orbit[(d.ell + i) % m])));
  }
  CayleyMap map(h, std::move(rot));
  PermutationGroup ambient = detail::extend_regular(*h, {d.sigma}, caps);

  auto pi = [&](Element x) { return static_cast<Element>(nk * (x / nk)); };
  std::vector<Permutation> rival_elems;
  for (Element y = 0; y < h->order(); ++y) {
    std::vector<Element> img(h->order());
    for (Element x = 0; x < h->order(); ++x) img[x] = h->mul(h->mul(y, x), pi(y));
    rival_elems.emplace_back(std::move(img));
  }
  PermutationGroup rival = PermutationGroup::from_closed_elements(h->order(), std::move(rival_elems));
  std::string notes = "H = " + h->name() + ", c = " + std::to_string(d.c) + ", l = " + std::to_string(d.ell);
  return FrobeniusMap{WitnessedMap{std::move(map), std::move(ambient), std::move(rival), std::move(notes)},
                      std::move(d)};
}

/// K = Z_7, m = 3, x -> 2x, k = 1.
inline FrobeniusMap frobenius_z7_map(Caps const& caps = {}) {
  FiniteGroup k = make_cyclic(7);
  return frobenius_map(3, k, power_map(k, 2), 1, caps);
}

/// K = Z_2^2 with the order-3 action (x, y) -> (y, x + y), k = (1, 0): H is A_4.
inline FrobeniusMap frobenius_klein_map(Caps const& caps = {}) {
  FiniteGroup k = make_abelian({2, 2});
  GroupIsomorphism act;
  act.images = {0, 2, 3, 1};  // index x + 2y
  return frobenius_map(3, k, act, 1, caps);
}

// ---------------------------------------------------------------------------

/// The two antibalanced valency-4 maps over Z_8.
inline std::vector<CayleyMap> z8_cim_maps() {
  auto h = share(make_cyclic(8));
  return {CayleyMap(h, {1, 3, 5, 7}), CayleyMap(h, {1, 7, 5, 3})};
}

}  // namespace cimlab
