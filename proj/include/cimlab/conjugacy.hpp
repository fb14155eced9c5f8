#pragma once

#include <string>

#include "cimlab/error.hpp"
#include "cimlab/group.hpp"
#include "cimlab/perm.hpp"
#include "cimlab/report.hpp"

namespace cimlab {

/// Instance check for transitive groups with cyclic point stabilizer: are all h-regular
/// subgroups of g conjugate to one another? The reference is the least regular copy in
/// sorted order; each other copy gets a conjugator witness, and the first non-conjugate copy
/// is reported as a rival.
inline CiReport check_cyclic_stabilizer_conjugacy(PermutationGroup const& g, FiniteGroup const& h,
                                                  bool require_class_m = true, Caps const& caps = {}) {
  CIMLAB_REQUIRE(g.degree() == h.order(), ErrorKind::invalid_argument, "degree must equal |h|");
  CIMLAB_REQUIRE(is_transitive(g), ErrorKind::not_transitive, "group is not transitive");
  CIMLAB_REQUIRE(is_cyclic_group(point_stabilizer(g, 0)), ErrorKind::stabilizer_not_cyclic,
                 "point stabilizer is not cyclic");
  auto const regs = regular_subgroups_isomorphic_to(g, h, caps);
  CIMLAB_REQUIRE(!regs.empty(), ErrorKind::no_regular_copy, "group has no regular subgroup isomorphic to " + h.name());
  if (require_class_m) {
    CIMLAB_REQUIRE(in_class_m(h, caps), ErrorKind::not_in_class_m, h.name() + " is not in class M");
  }

  CiReport report;
  report.subject = h.name() + " in permutation group of order " + std::to_string(g.order());
  report.method = CiMethod::cyclic_stabilizer;
  report.counts["group_order"] = g.order();
  report.counts["regular_subgroups"] = regs.size();
  for (std::size_t i = 1; i < regs.size(); ++i) {
    auto x = are_conjugate_subgroups(g, regs[i], regs[0]);
    CiWitness w;
    w.subgroup_generators = regs[i].generators();
    w.subgroup_order = regs[i].order();
    if (x) {
      w.kind = WitnessKind::conjugator;
      w.conjugator = *x;
      report.witnesses.push_back(std::move(w));
    } else {
      w.kind = WitnessKind::rival_subgroup;
      report.verdict = false;
      report.witnesses.push_back(std::move(w));
      break;
    }
  }
  if (!require_class_m) report.notes.push_back("class M precondition not enforced");
  return report;
}

}  // namespace cimlab
