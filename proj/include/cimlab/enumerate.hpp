#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cimlab/group.hpp"

namespace cimlab {

/// The classes {x, x^-1} of non-identity elements, ordered by least member.
inline std::vector<std::vector<Element>> inverse_classes(FiniteGroup const& h) {
  std::vector<std::vector<Element>> out;
  for (Element x = 1; x < h.order(); ++x) {
    Element xi = h.inv(x);
    if (xi < x) continue;
    out.push_back(xi == x ? std::vector<Element>{x} : std::vector<Element>{x, xi});
  }
  return out;
}

/// Every nonempty inverse-closed identity-free subset of h with size <= max_valency, each
/// sorted, ordered by (size, members).
inline std::vector<std::vector<Element>> symmetric_connection_sets(FiniteGroup const& h,
                                                                   std::size_t max_valency) {
  auto const classes = inverse_classes(h);
  CIMLAB_REQUIRE(classes.size() < 40, ErrorKind::capacity, "too many inverse classes to enumerate");
  std::vector<std::vector<Element>> out;
  std::uint64_t const total = std::uint64_t{1} << classes.size();
  for (std::uint64_t mask = 1; mask < total; ++mask) {
    std::vector<Element> s;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      if (mask >> i & 1) s.insert(s.end(), classes[i].begin(), classes[i].end());
    }
    if (s.size() > max_valency) continue;
    std::sort(s.begin(), s.end());
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](auto const& a, auto const& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

/// (k-1)! cyclic orderings of a k-set (one for k <= 2).
inline std::uint64_t rotation_count(std::size_t k) {
  std::uint64_t r = 1;
  for (std::size_t i = 2; i < k; ++i) r *= i;
  return r;
}

/// Calls visit(rotation) for every cyclic ordering of the sorted set, each in canonical phase
/// (least element first), in lexicographic order. visit returns false to stop early.
template <typename Visit>
bool for_each_rotation(std::span<Element const> sorted_set, Visit&& visit) {
  if (sorted_set.empty()) return true;
  std::vector<Element> rot(sorted_set.begin(), sorted_set.end());
  do {
    if (!visit(std::span<Element const>(rot))) return false;
  } while (std::next_permutation(rot.begin() + 1, rot.end()));
  return true;
}

/// Lexicographic rank of a canonical rotation among all rotations of its set.
inline std::uint64_t rotation_rank(std::span<Element const> rotation) {
  std::vector<Element> tail(rotation.begin() + (rotation.empty() ? 0 : 1), rotation.end());
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < tail.size(); ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < tail.size(); ++j) smaller += tail[j] < tail[i];
    std::uint64_t f = 1;
    for (std::size_t k = 2; k < tail.size() - i; ++k) f *= k;
    rank += smaller * f;
  }
  return rank;
}

}  // namespace cimlab
