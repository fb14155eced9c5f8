#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cimlab/cayley_map.hpp"
#include "cimlab/perm.hpp"

namespace cimlab {

enum class CiMethod { babai, definitional, exhaustive_cim, connected_cim, cross_validation, cyclic_stabilizer };

inline std::string_view to_string(CiMethod m) {
  switch (m) {
    case CiMethod::babai: return "babai";
    case CiMethod::definitional: return "definitional";
    case CiMethod::exhaustive_cim: return "exhaustive-cim";
    case CiMethod::connected_cim: return "exhaustive-connected-cim";
    case CiMethod::cross_validation: return "cross-validation";
    case CiMethod::cyclic_stabilizer: return "cyclic-stabilizer-conjugacy";
  }
  return "unknown";
}

enum class WitnessKind { rival_subgroup, map_pair, conjugator };

inline std::string_view to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::rival_subgroup: return "rival-subgroup";
    case WitnessKind::map_pair: return "map-pair";
    case WitnessKind::conjugator: return "conjugator";
  }
  return "unknown";
}

/// Evidence attached to a verdict.
///  - rival_subgroup: an H-regular subgroup of Aut(M) not conjugate to the left-regular copy.
///  - map_pair: `map` and `other` are isomorphic (via `isomorphism`, other -> map) but not
///    Cayley isomorphic.
///  - conjugator: `conjugator` carries `subgroup` onto the reference subgroup.
struct CiWitness {
  WitnessKind kind = WitnessKind::rival_subgroup;
  std::vector<Permutation> subgroup_generators;
  std::size_t subgroup_order = 0;
  std::optional<CayleyMap> map;
  std::optional<CayleyMap> other;
  std::optional<Permutation> isomorphism;
  std::optional<Permutation> conjugator;
};

struct CiReport {
  std::string subject;
  bool verdict = true;
  CiMethod method = CiMethod::babai;
  std::vector<CiWitness> witnesses;
  std::map<std::string, std::uint64_t> counts;
  std::vector<std::string> notes;
  std::optional<double> elapsed_seconds;  // only filled when timings are requested
};

}  // namespace cimlab
