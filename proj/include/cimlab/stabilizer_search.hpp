#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "cimlab/cayley_map.hpp"
#include "cimlab/enumerate.hpp"
#include "cimlab/error.hpp"
#include "cimlab/map_iso.hpp"

namespace cimlab {

namespace detail {

inline std::vector<std::size_t> prime_divisors(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// Depth-first search for rotations of a fixed connection set admitting a vertex-stabilizer
/// element phi that acts on S as rho^m, m = |S|/q for a prime q.
///
/// Such a phi has order q on the whole vertex set (the stabilizer is faithful on S), and along
/// every arc it satisfies phi(h s_i) = phi(h) s_{i + off(h)}. The search fills rotation
/// positions one at a time and closes the partial state under those rules, failing on any
/// contradiction. Leaves are confirmed by the exact extension.
class StabilizerRotationSearch {
 public:
  StabilizerRotationSearch(GroupPtr h, std::vector<Element> set, std::size_t q)
      : group_(std::move(h)), h_(*group_), set_(std::move(set)), d_(set_.size()), q_(q), m_(d_ / q) {
    in_s_.assign(h_.order(), 0);
    for (Element s : set_) in_s_[s] = 1;
    for (std::size_t r = 0; r < m_; ++r) {
      for (std::size_t i = r; i < d_; i += m_) order_.push_back(i);
    }
  }

  std::vector<std::vector<Element>> run() {
    State st;
    std::size_t const n = h_.order();
    st.seq.assign(d_, kNoElement);
    st.pos.assign(n, -1);
    st.phi.assign(n, kNoElement);
    st.phinv.assign(n, kNoElement);
    st.off.assign(n, -1);
    if (!set_phi(st, 0, 0) || !set_off(st, 0, static_cast<int>(m_)) || !set_seq(st, 0, set_.front()) ||
        !propagate(st)) {
      return {};
    }
    dfs(st);
    std::sort(found_.begin(), found_.end());
    return std::move(found_);
  }

  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  struct State {
    std::vector<Element> seq;
    std::vector<int> pos;
    std::vector<Element> phi;
    std::vector<Element> phinv;
    std::vector<int> off;
    bool changed = false;
  };

  bool set_seq(State& st, std::size_t i, Element x) const {
    if (st.seq[i] == x) return true;
    if (st.seq[i] != kNoElement || !in_s_[x] || st.pos[x] >= 0) return false;
    st.seq[i] = x;
    st.pos[x] = static_cast<int>(i);
    st.changed = true;
    return true;
  }

  bool set_phi(State& st, Element y, Element z) const {
    if (st.phi[y] == z) return true;
    if (st.phi[y] != kNoElement || st.phinv[z] != kNoElement) return false;
    if (in_s_[y] != in_s_[z] || (y == 0) != (z == 0)) return false;
    st.phi[y] = z;
    st.phinv[z] = y;
    st.changed = true;
    return true;
  }

  bool set_off(State& st, Element h, int k) const {
    if (st.off[h] == k) return true;
    if (st.off[h] >= 0) return false;
    st.off[h] = k;
    st.changed = true;
    return true;
  }

  // phi has order q, so every orbit has length 1 or q.
  bool close_cycle(State& st, Element y) const {
    Element cur = y;
    for (std::size_t step = 1; step <= q_; ++step) {
      Element next = st.phi[cur];
      if (next == kNoElement) {
        return step == q_ ? set_phi(st, cur, y) : true;
      }
      if (next == y) return step == 1 || step == q_;
      cur = next;
    }
    return false;
  }

  bool propagate(State& st) const {
    std::size_t const n = h_.order();
    int const d = static_cast<int>(d_);
    do {
      st.changed = false;
      for (std::size_t i = 0; i < d_; ++i) {
        Element a = st.seq[i], b = st.seq[(i + m_) % d_];
        if (a != kNoElement && b != kNoElement && !set_phi(st, a, b)) return false;
      }
      for (Element h = 0; h < n; ++h) {
        if (st.phi[h] == kNoElement) continue;
        if (!close_cycle(st, h)) return false;
        Element fh = st.phi[h];
        Element fh_inv = h_.inv(fh);
        // every known arc image must be an arc
        for (Element s : set_) {
          Element fy = st.phi[h_.mul(h, s)];
          if (fy != kNoElement && !in_s_[h_.mul(fh_inv, fy)]) return false;
        }
        if (st.off[h] < 0) {
          for (Element s : set_) {
            if (st.pos[s] < 0) continue;
            Element fy = st.phi[h_.mul(h, s)];
            if (fy == kNoElement) continue;
            int p = st.pos[h_.mul(fh_inv, fy)];
            if (p < 0) continue;
            if (!set_off(st, h, ((p - st.pos[s]) % d + d) % d)) return false;
            break;
          }
        }
        if (st.off[h] < 0) continue;
        std::size_t const off = static_cast<std::size_t>(st.off[h]);
        for (std::size_t i = 0; i < d_; ++i) {
          std::size_t j = (i + off) % d_;
          if (st.seq[i] != kNoElement) {
            Element y = h_.mul(h, st.seq[i]);
            if (st.seq[j] != kNoElement) {
              if (!set_phi(st, y, h_.mul(fh, st.seq[j]))) return false;
            } else if (st.phi[y] != kNoElement) {
              if (!set_seq(st, j, h_.mul(fh_inv, st.phi[y]))) return false;
            }
          } else if (st.seq[j] != kNoElement) {
            Element x = st.phinv[h_.mul(fh, st.seq[j])];
            if (x != kNoElement && !set_seq(st, i, h_.mul(h_.inv(h), x))) return false;
          }
        }
      }
    } while (st.changed);
    return true;
  }

  void dfs(State const& st) {
    ++nodes_;
    auto next = std::find_if(order_.begin(), order_.end(), [&](std::size_t i) { return st.seq[i] == kNoElement; });
    if (next == order_.end()) {
      CayleyMap m(group_, st.seq);
      if (ext_.extend(m, m, 0, m_)) found_.push_back(m.rotation());
      return;
    }
    for (Element x : set_) {
      if (st.pos[x] >= 0) continue;
      State child = st;
      if (set_seq(child, *next, x) && propagate(child)) dfs(child);
    }
  }

  GroupPtr group_;
  FiniteGroup const& h_;
  std::vector<Element> set_;
  std::size_t d_, q_, m_;
  std::vector<char> in_s_;
  std::vector<std::size_t> order_;
  std::vector<std::vector<Element>> found_;
  MapExtender ext_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// Above this many rotations per connection set, the stabilizer-guided search replaces
/// plain enumeration.
inline constexpr std::uint64_t kDirectRotationLimit = 40320;

/// Canonical rotations of a generating connection set whose map has a nontrivial
/// identity-vertex stabilizer, in lexicographic order.
inline std::vector<std::vector<Element>> rotations_with_nontrivial_stabilizer_direct(GroupPtr h,
                                                                                     std::vector<Element> const& set) {
  std::vector<std::vector<Element>> out;
  detail::MapExtender ext;
  for_each_rotation(std::span<Element const>(set), [&](std::span<Element const> rot) {
    CayleyMap m(h, std::vector<Element>(rot.begin(), rot.end()));
    for (std::size_t k = 1; k < m.valency(); ++k) {
      if (ext.extend(m, m, 0, k)) {
        out.push_back(m.rotation());
        break;
      }
    }
    return true;
  });
  return out;
}

inline std::vector<std::vector<Element>> rotations_with_nontrivial_stabilizer_guided(GroupPtr h,
                                                                                     std::vector<Element> const& set) {
  CIMLAB_REQUIRE(!set.empty() && std::is_sorted(set.begin(), set.end()), ErrorKind::invalid_argument,
                 "connection set must be sorted and nonempty");
  CIMLAB_REQUIRE(generated_subgroup(*h, std::span<Element const>(set)).order() == h->order(),
                 ErrorKind::precondition, "guided stabilizer search needs a generating connection set");
  std::vector<std::vector<Element>> out;
  for (std::size_t q : detail::prime_divisors(set.size())) {
    auto part = detail::StabilizerRotationSearch(h, set, q).run();
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<std::vector<Element>> rotations_with_nontrivial_stabilizer(GroupPtr h,
                                                                              std::vector<Element> const& set) {
  if (rotation_count(set.size()) > kDirectRotationLimit) return rotations_with_nontrivial_stabilizer_guided(h, set);
  return rotations_with_nontrivial_stabilizer_direct(std::move(h), set);
}

}  // namespace cimlab
