#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "cimlab/ci.hpp"
#include "cimlab/conjugacy.hpp"
#include "cimlab/constructions.hpp"
#include "cimlab/json_io.hpp"

namespace cimlab {

inline constexpr char const* kVersion = "0.1.0";

struct ReproduceOptions {
  std::size_t workers = 1;
  bool timings = false;
  Caps caps{};
};

namespace detail {

inline io::json sorted_elements(std::vector<Element> v) {
  std::sort(v.begin(), v.end());
  return v;
}

class Battery {
 public:
  explicit Battery(ReproduceOptions const& opt) : opt_(opt) {}

  template <typename Fn>
  void section(std::string const& key, Fn&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    io::json j = fn();
    if (opt_.timings) {
      j["elapsed_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    results_[key] = std::move(j);
  }

  void row(std::string const& key, std::string const& claim, io::json expected, io::json observed) {
    bool ok = expected == observed;
    all_ &= ok;
    summary_.push_back(io::json{{"result", key}, {"claim", claim}, {"expected", expected}, {"observed", observed},
                                {"reproduced", ok}});
  }

  io::json finish() {
    return io::json{{"tool", "cimlab"},
                    {"version", kVersion},
                    {"results", results_},
                    {"summary", summary_},
                    {"all_reproduced", all_}};
  }

  ReproduceOptions const& options() const { return opt_; }

 private:
  ReproduceOptions opt_;
  io::json results_ = io::json::object();
  io::json summary_ = io::json::array();
  bool all_ = true;
};

inline io::json witnessed_facts(WitnessedMap const& w, Caps const& caps) {
  auto const aut = map_automorphism_group(w.map);
  auto const hat = left_regular_representation(w.map.group());
  bool ambient_inside = std::all_of(w.ambient.elements().begin(), w.ambient.elements().end(),
                                    [&](Permutation const& p) { return aut.contains(p); });
  bool rival_inside = std::all_of(w.rival.elements().begin(), w.rival.elements().end(),
                                  [&](Permutation const& p) { return w.ambient.contains(p); });
  auto const report = babai_is_ci_map(w.map, caps);
  return io::json{{"map", describe(w.map)},
                  {"aut_order", aut.order()},
                  {"ambient_order", w.ambient.order()},
                  {"ambient_is_full_aut", w.ambient.order() == aut.order() && ambient_inside},
                  {"rival", io::permutation_group_json(w.rival)},
                  {"rival_regular", is_regular(w.rival)},
                  {"rival_in_ambient", rival_inside},
                  {"rival_isomorphic_to_group", is_isomorphic(as_abstract_group(w.rival), w.map.group(), caps).has_value()},
                  {"rival_conjugate_to_left_regular", are_conjugate_subgroups(w.ambient, w.rival, hat).has_value()},
                  {"babai_verdict", report.verdict},
                  {"balanced", is_balanced(w.map)},
                  {"antibalanced", is_antibalanced(w.map)},
                  {"notes", w.notes}};
}

}  // namespace detail

/// The full battery of constructions and exhaustive checks, as deterministic JSON.
inline io::json reproduce_all(ReproduceOptions const& opt = {}) {
  detail::Battery b(opt);
  Caps const& caps = opt.caps;

  for (auto kind : {SquareKind::cyclic, SquareKind::elementary}) {
    std::string key = kind == SquareKind::cyclic ? "odd-square-cyclic" : "odd-square-elementary";
    io::json facts;
    b.section(key, [&] {
      auto w = odd_square_map(3, kind, std::nullopt, caps);
      facts = detail::witnessed_facts(w, caps);
      facts["p"] = 3;
      if (kind == SquareKind::cyclic) {
        facts["gamma_in_rival"] = w.rival.contains(Permutation({1, 5, 0, 4, 8, 3, 7, 2, 6}));
      }
      return facts;
    });
    b.row(key, "p = 3: |Aut(M)| = 54", 54, facts["aut_order"]);
    b.row(key, "p = 3: rival is regular, in Aut(M), not conjugate to the left-regular copy",
          io::json::array({true, true, false}),
          io::json::array({facts["rival_regular"], facts["rival_in_ambient"], facts["rival_conjugate_to_left_regular"]}));
    b.row(key, "p = 3: map is not CI", false, facts["babai_verdict"]);
  }

  {
    io::json facts4, facts5;
    b.section("cyclic-2power", [&] {
      auto w = cyclic_2power_map(4, caps);
      facts4 = detail::witnessed_facts(w, caps);
      facts4["rival_normal_in_ambient"] = is_normal_subgroup(w.ambient, w.rival);
      facts4["overlap6_set"] = translation_overlap_set(w.map, 6);
      facts4["overlap8_set"] = translation_overlap_set(w.map, 8);
      auto w5 = cyclic_2power_map(5, caps);
      facts5 = detail::witnessed_facts(w5, caps);
      facts5["overlap6_set"] = translation_overlap_set(w5.map, 6);
      return io::json{{"n4", facts4}, {"n5", facts5}};
    });
    b.row("cyclic-2power", "n = 4: |Aut(M)| = 32", 32, facts4["aut_order"]);
    b.row("cyclic-2power", "n = 4: map is not CI, rival of order 16 normal in the ambient group",
          io::json::array({false, 16, true}),
          io::json::array({facts4["babai_verdict"], facts4["rival"]["order"], facts4["rival_normal_in_ambient"]}));
    b.row("cyclic-2power", "n = 5: map is not CI", false, facts5["babai_verdict"]);
    b.row("cyclic-2power", "n = 5: {x : |S & (S+x)| = 6} = {2, -2, 2+2^(n-1), -2+2^(n-1)}",
          detail::sorted_elements({2, 30, 18, 14}), facts5["overlap6_set"]);
    b.row("cyclic-2power", "n = 4: {x : |S & (S+x)| = 6} = {2, -2, 2+2^(n-1), -2+2^(n-1)}",
          detail::sorted_elements({2, 14, 10, 6}), facts4["overlap6_set"]);
  }

  {
    io::json facts;
    b.section("quaternion-16", [&] {
      auto q = quaternion16_witness();
      auto iso = find_map_isomorphism(q.map, q.cyclic_map);
      facts = io::json{{"map", describe(q.map)},
                       {"cyclic_map", describe(q.cyclic_map)},
                       {"aut_order", map_automorphism_group(q.map).order()},
                       {"balanced", is_balanced(q.map)},
                       {"relabel_is_isomorphism", is_map_isomorphism(q.map, q.cyclic_map, q.relabel)},
                       {"map_isomorphism_found", iso.has_value()},
                       {"cayley_isomorphic", are_cayley_isomorphic(q.map, q.cyclic_map, caps).has_value()},
                       {"groups_isomorphic", is_isomorphic(q.map.group(), q.cyclic_map.group(), caps).has_value()}};
      return facts;
    });
    b.row("quaternion-16", "|Aut(M)| = 32 and M is balanced", io::json::array({32, true}),
          io::json::array({facts["aut_order"], facts["balanced"]}));
    b.row("quaternion-16", "M and M' are isomorphic maps but not Cayley isomorphic; Q8 and Z8 are not isomorphic",
          io::json::array({true, true, false, false}),
          io::json::array({facts["relabel_is_isomorphism"], facts["map_isomorphism_found"], facts["cayley_isomorphic"],
                           facts["groups_isomorphic"]}));
  }

  for (bool klein : {false, true}) {
    std::string key = klein ? "frobenius-klein" : "frobenius-z7";
    io::json facts;
    b.section(key, [&] {
      auto f = klein ? frobenius_klein_map(caps) : frobenius_z7_map(caps);
      facts = detail::witnessed_facts(f.witnessed, caps);
      auto const& m = f.witnessed.map;
      bool rho2 = std::all_of(m.rotation().begin(), m.rotation().end(),
                              [&](Element s) { return m.rho_pow(s, 2) == f.data.sigma(s); });
      facts["rho_squared_is_conjugation"] = rho2;
      facts["group_order"] = m.group().order();
      facts["valency"] = m.valency();
      facts["ell"] = f.data.ell;
      return facts;
    });
    if (!klein) {
      b.row(key, "rho^2 = conjugation by c on S u S^-1; ambient order 63", io::json::array({true, 63}),
            io::json::array({facts["rho_squared_is_conjugation"], facts["ambient_order"]}));
      b.row(key, "rival regular of order 21, not conjugate to the left-regular copy; map is not CI",
            io::json::array({true, 21, false, false}),
            io::json::array({facts["rival_regular"], facts["rival"]["order"], facts["rival_conjugate_to_left_regular"],
                             facts["babai_verdict"]}));
    } else {
      b.row(key, "K = Z2^2 with an order-3 action: connected non-CI map over a group of order 12",
            io::json::array({12, false}), io::json::array({facts["group_order"], facts["babai_verdict"]}));
    }
  }

  {
    io::json facts;
    b.section("z8-cim", [&] {
      CimOptions o;
      o.max_valency = 7;
      o.workers = opt.workers;
      o.caps = caps;
      auto h = share(make_cyclic(8));
      auto r = verify_cim_group(h, o);
      io::json maps = io::json::array();
      for (auto const& m : z8_cim_maps()) {
        auto aut = map_automorphism_group(m);
        maps.push_back(io::json{{"map", describe(m)},
                                {"aut_order", aut.order()},
                                {"antibalanced", is_antibalanced(m)},
                                {"babai_verdict", babai_is_ci_map(m, caps).verdict},
                                {"stabilizer_conjugacy", check_cyclic_stabilizer_conjugacy(aut, *h, false, caps).verdict}});
      }
      facts = io::json{{"verdict", r.verdict}, {"counts", r.counts}, {"notes", r.notes}, {"featured_maps", maps}};
      return facts;
    });
    b.row("z8-cim", "Z8 is a CIM-group (all 940 maps, valency <= 7)", io::json::array({true, 940}),
          io::json::array({facts["verdict"], facts["counts"]["maps_checked"]}));
    io::json featured = io::json::array();
    for (auto const& m : facts["featured_maps"]) {
      featured.push_back(io::json::array({m["aut_order"], m["antibalanced"], m["babai_verdict"]}));
    }
    b.row("z8-cim", "(1,3,5,7) and (1,7,5,3): |Aut| = 32, antibalanced, CI",
          io::json::array({io::json::array({32, true, true}), io::json::array({32, true, true})}), featured);
  }

  {
    io::json scan = io::json::object();
    b.section("odd-order-scan", [&] {
      std::vector<std::pair<std::string, FiniteGroup>> groups;
      for (std::size_t n : {3, 5, 7, 9, 11, 13, 15}) groups.emplace_back("Z" + std::to_string(n), make_cyclic(n));
      groups.emplace_back("Z3xZ3", make_abelian({3, 3}));
      groups.emplace_back("Z3xZ5", make_abelian({3, 5}));
      for (auto& [name, g] : groups) {
        CimOptions o;
        o.max_valency = g.order() - 1;
        o.workers = opt.workers;
        o.caps = caps;
        auto r = verify_cim_group(share(std::move(g)), o);
        io::json entry{{"verdict", r.verdict}, {"maps_checked", r.counts["maps_checked"]},
                       {"babai_runs", r.counts["babai_runs"]}};
        if (!r.verdict) entry["witness"] = describe(*r.witnesses.front().map);
        scan[name] = entry;
      }
      return scan;
    });
    io::json expected = io::json::object(), observed = io::json::object();
    for (auto const& [name, entry] : scan.items()) {
      expected[name] = name != "Z9" && name != "Z3xZ3";
      observed[name] = entry["verdict"];
    }
    b.row("odd-order-scan", "odd order <= 15: CIM exactly for cyclic groups of square-free order", expected, observed);
  }

  {
    io::json facts;
    b.section("z16-connected", [&] {
      CimOptions o;
      o.max_valency = 8;
      o.workers = opt.workers;
      o.caps = caps;
      auto r = verify_connected_cim(share(make_cyclic(16)), o);
      facts = io::json{{"verdict", r.verdict}, {"counts", r.counts}};
      if (!r.witnesses.empty()) facts["witness"] = describe(*r.witnesses.front().map);
      return facts;
    });
    b.row("z16-connected", "Z16 is not a connected CIM-group (search, valency <= 8)", false, facts["verdict"]);
  }

  return b.finish();
}

}  // namespace cimlab
