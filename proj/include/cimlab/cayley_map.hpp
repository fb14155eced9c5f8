#pragma once

#include <algorithm>
#include <array>
#include <memory>
#include <string>
#include <vector>

#include "cimlab/error.hpp"
#include "cimlab/group.hpp"
#include "cimlab/perm.hpp"

namespace cimlab {

using GroupPtr = std::shared_ptr<FiniteGroup const>;

inline GroupPtr share(FiniteGroup g) { return std::make_shared<FiniteGroup const>(std::move(g)); }

/// CM(H, S, rho): the rotation lists S in rho-order, stored in canonical phase
/// (smallest element index first). Mirror images are distinct maps.
class CayleyMap {
 public:
  CayleyMap(GroupPtr group, std::vector<Element> rotation)
      : group_(std::move(group)), rotation_(std::move(rotation)) {
    CIMLAB_REQUIRE(group_ != nullptr, ErrorKind::invalid_argument, "map needs a group");
    std::size_t const n = group_->order();
    position_.assign(n, -1);
    for (std::size_t i = 0; i < rotation_.size(); ++i) {
      Element s = rotation_[i];
      CIMLAB_REQUIRE(s < n, ErrorKind::invalid_argument, "rotation entry out of range");
      CIMLAB_REQUIRE(s != 0, ErrorKind::identity_in_connection_set, "identity in connection set");
      CIMLAB_REQUIRE(position_[s] < 0, ErrorKind::duplicate_entry,
                     "element " + std::to_string(s) + " repeated in rotation");
      position_[s] = static_cast<int>(i);
    }
    for (Element s : rotation_) {
      CIMLAB_REQUIRE(position_[group_->inv(s)] >= 0, ErrorKind::not_symmetric,
                     "inverse of " + std::to_string(s) + " missing from connection set");
    }
    if (!rotation_.empty()) {
      auto lead = std::min_element(rotation_.begin(), rotation_.end());
      std::rotate(rotation_.begin(), lead, rotation_.end());
      for (std::size_t i = 0; i < rotation_.size(); ++i) position_[rotation_[i]] = static_cast<int>(i);
    }
  }

  FiniteGroup const& group() const noexcept { return *group_; }
  GroupPtr const& group_ptr() const noexcept { return group_; }
  std::vector<Element> const& rotation() const noexcept { return rotation_; }
  std::size_t valency() const noexcept { return rotation_.size(); }

  bool in_connection_set(Element x) const { return position_[x] >= 0; }
  /// Index of s in the rotation, or -1.
  int position(Element s) const { return position_[s]; }

  Element rho(Element s) const { return rho_pow(s, 1); }
  Element rho_inv(Element s) const { return rho_pow(s, -1); }
  Element rho_pow(Element s, long long k) const {
    long long d = static_cast<long long>(rotation_.size());
    long long i = ((position_[s] + k) % d + d) % d;
    return rotation_[static_cast<std::size_t>(i)];
  }

  std::vector<Element> connection_set() const {
    std::vector<Element> s = rotation_;
    std::sort(s.begin(), s.end());
    return s;
  }

  friend bool operator==(CayleyMap const& a, CayleyMap const& b) {
    return (a.group_ == b.group_ || a.group_->same_table(*b.group_)) && a.rotation_ == b.rotation_;
  }

 private:
  GroupPtr group_;
  std::vector<Element> rotation_;
  std::vector<int> position_;
};

inline CayleyMap make_map(GroupPtr h, std::vector<Element> rotation) {
  return CayleyMap(std::move(h), std::move(rotation));
}

/// Total order on maps over one group: valency, then connection set, then rotation.
inline bool map_less(CayleyMap const& a, CayleyMap const& b) {
  if (a.valency() != b.valency()) return a.valency() < b.valency();
  auto sa = a.connection_set(), sb = b.connection_set();
  if (sa != sb) return sa < sb;
  return a.rotation() < b.rotation();
}

/// <S> = H.
inline bool is_connected(CayleyMap const& m) {
  return generated_subgroup(m.group(), std::span<Element const>(m.rotation())).order() == m.group().order();
}

/// rho(s^-1) = rho(s)^-1 for all s.
inline bool is_balanced(CayleyMap const& m) {
  auto const& h = m.group();
  return std::all_of(m.rotation().begin(), m.rotation().end(),
                     [&](Element s) { return m.rho(h.inv(s)) == h.inv(m.rho(s)); });
}

/// rho(s^-1) = rho^-1(s)^-1 for all s.
inline bool is_antibalanced(CayleyMap const& m) {
  auto const& h = m.group();
  return std::all_of(m.rotation().begin(), m.rotation().end(),
                     [&](Element s) { return m.rho(h.inv(s)) == h.inv(m.rho_inv(s)); });
}

/// (x, y, z) with x^-1 y in S and rho(x^-1 y) = x^-1 z.
struct TernaryRelation {
  std::size_t degree = 0;
  std::vector<std::array<Element, 3>> triples;  // sorted

  bool contains(std::array<Element, 3> const& t) const {
    return std::binary_search(triples.begin(), triples.end(), t);
  }
  friend bool operator==(TernaryRelation const&, TernaryRelation const&) = default;
};

inline TernaryRelation ternary_relation(CayleyMap const& m) {
  auto const& h = m.group();
  TernaryRelation r;
  r.degree = h.order();
  r.triples.reserve(h.order() * m.valency());
  for (Element x = 0; x < h.order(); ++x) {
    for (Element s : m.rotation()) r.triples.push_back({x, h.mul(x, s), h.mul(x, m.rho(s))});
  }
  std::sort(r.triples.begin(), r.triples.end());
  return r;
}

/// Image of a relation under a point bijection.
inline TernaryRelation image_of(TernaryRelation const& r, std::vector<Element> const& f) {
  TernaryRelation out;
  out.degree = r.degree;
  out.triples.reserve(r.triples.size());
  for (auto const& t : r.triples) out.triples.push_back({f[t[0]], f[t[1]], f[t[2]]});
  std::sort(out.triples.begin(), out.triples.end());
  return out;
}

/// CM(H', sigma(S), sigma rho sigma^-1) for a group isomorphism sigma: H -> H'.
inline CayleyMap apply_group_automorphism(CayleyMap const& m, GroupIsomorphism const& sigma,
                                          GroupPtr target = nullptr) {
  if (!target) target = m.group_ptr();
  CIMLAB_REQUIRE(sigma.size() == m.group().order() && target->order() == m.group().order(),
                 ErrorKind::invalid_argument, "isomorphism size mismatch");
  std::vector<Element> rot;
  rot.reserve(m.valency());
  for (Element s : m.rotation()) rot.push_back(sigma(s));
  return CayleyMap(std::move(target), std::move(rot));
}

/// phi is a skew-morphism of h: phi(g x) = phi(g) phi^{pi(g)}(x) for all x, with the power
/// pi(g) searched in 0..order(phi)-1.
inline bool is_skew_morphism(FiniteGroup const& h, Permutation const& phi) {
  CIMLAB_REQUIRE(phi.degree() == h.order(), ErrorKind::invalid_argument, "degree must equal |h|");
  if (phi(0) != 0) return false;
  std::size_t const ord = phi.order();
  std::vector<Permutation> powers{Permutation::identity(h.order())};
  for (std::size_t i = 1; i < ord; ++i) powers.push_back(phi * powers.back());
  for (Element g = 0; g < h.order(); ++g) {
    bool some_power = std::any_of(powers.begin(), powers.end(), [&](Permutation const& p) {
      for (Element x = 0; x < h.order(); ++x) {
        if (phi(h.mul(g, x)) != h.mul(phi(g), p(x))) return false;
      }
      return true;
    });
    if (!some_power) return false;
  }
  return true;
}

/// Relabels a map along a point bijection theta: H -> H that fixes the identity:
/// the result has connection set theta^-1(S) and rotation theta^-1 rho theta.
inline CayleyMap pull_back(CayleyMap const& m, Permutation const& theta) {
  Permutation const inv = theta.inverse();
  std::vector<Element> rot;
  for (Element s : m.rotation()) rot.push_back(inv(s));
  return CayleyMap(m.group_ptr(), std::move(rot));
}

}  // namespace cimlab
