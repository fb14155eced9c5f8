#pragma once

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cimlab/cayley_map.hpp"
#include "cimlab/ci.hpp"
#include "cimlab/constructions.hpp"
#include "cimlab/error.hpp"
#include "cimlab/group.hpp"
#include "cimlab/map_iso.hpp"
#include "cimlab/perm.hpp"
#include "cimlab/report.hpp"

namespace cimlab::io {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Spec strings

namespace detail {

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  return b == std::string_view::npos ? std::string() : std::string(s.substr(b, e - b + 1));
}

inline std::size_t parse_size(std::string_view s, std::string_view what) {
  std::string t = trim(s);
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  CIMLAB_REQUIRE(!t.empty() && ec == std::errc() && p == t.data() + t.size(), ErrorKind::parse,
                 "expected a non-negative integer for " + std::string(what) + ", got '" + t + "'");
  return v;
}

inline std::vector<std::size_t> parse_list(std::string_view s, char sep, std::string_view what) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto end = s.find(sep, start);
    if (end == std::string_view::npos) end = s.size();
    out.push_back(parse_size(s.substr(start, end - start), what));
    start = end + 1;
  }
  return out;
}

/// Splits "A,B" where B starts with a letter, at the first such comma.
inline std::pair<std::string, std::string> split_product(std::string_view s) {
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (s[i] == ',' && std::isalpha(static_cast<unsigned char>(s[i + 1]))) {
      return {std::string(s.substr(0, i)), std::string(s.substr(i + 1))};
    }
  }
  throw Error(ErrorKind::parse, "product spec needs two group specs: '" + std::string(s) + "'");
}

}  // namespace detail

/// Group specs:
///   cyclic:N | abelian:a,b,... | quaternion:N | dihedral:N | product:<A>,<B>
///   semidirect:<K>,<m>,mult:k | semidirect:<K>,<m>,images:i0/i1/...
inline FiniteGroup parse_group_spec(std::string_view spec) {
  std::string s = detail::trim(spec);
  auto colon = s.find(':');
  CIMLAB_REQUIRE(colon != std::string::npos, ErrorKind::parse, "group spec needs a 'kind:' prefix: '" + s + "'");
  std::string kind = s.substr(0, colon);
  std::string_view rest = std::string_view(s).substr(colon + 1);
  if (kind == "cyclic") return make_cyclic(detail::parse_size(rest, "cyclic order"));
  if (kind == "abelian") return make_abelian(detail::parse_list(rest, ',', "abelian factor"));
  if (kind == "quaternion") return make_generalized_quaternion(detail::parse_size(rest, "quaternion order"));
  if (kind == "dihedral") return make_dihedral(detail::parse_size(rest, "dihedral n"));
  if (kind == "product") {
    auto [a, b] = detail::split_product(rest);
    return direct_product(parse_group_spec(a), parse_group_spec(b));
  }
  if (kind == "semidirect") {
    auto act = rest.rfind(",mult:");
    if (act == std::string_view::npos) act = rest.rfind(",images:");
    CIMLAB_REQUIRE(act != std::string_view::npos, ErrorKind::parse,
                   "semidirect spec needs a trailing mult:k or images:... action");
    std::string_view action = rest.substr(act + 1);
    std::string_view head = rest.substr(0, act);
    auto comma = head.rfind(',');
    CIMLAB_REQUIRE(comma != std::string_view::npos, ErrorKind::parse, "semidirect spec needs <K>,<m>,<action>");
    FiniteGroup k = parse_group_spec(head.substr(0, comma));
    std::size_t m = detail::parse_size(head.substr(comma + 1), "complement order");
    GroupIsomorphism a;
    if (action.starts_with("mult:")) {
      a = power_map(k, static_cast<long long>(detail::parse_size(action.substr(5), "multiplier")));
    } else {
      for (std::size_t x : detail::parse_list(action.substr(7), '/', "action image")) {
        a.images.push_back(static_cast<Element>(x));
      }
      CIMLAB_REQUIRE(a.images.size() == k.order(), ErrorKind::parse, "action image list must have |K| entries");
    }
    return make_semidirect(k, m, a);
  }
  throw Error(ErrorKind::parse, "unknown group kind '" + kind + "'");
}

inline CayleyMap map_from_json(json const& j);

/// Map specs: "zN:r1,r2,...", "<group spec>@r1,r2,...", or a path to a .json map.
inline CayleyMap parse_map_spec(std::string_view spec) {
  std::string s = detail::trim(spec);
  if (s.size() > 5 && s.ends_with(".json")) {
    std::ifstream in(s);
    CIMLAB_REQUIRE(in.good(), ErrorKind::parse, "cannot open map file '" + s + "'");
    json j;
    try {
      in >> j;
    } catch (json::exception const& e) {
      throw Error(ErrorKind::parse, std::string("invalid JSON in '") + s + "': " + e.what());
    }
    return map_from_json(j);
  }
  auto to_rotation = [](std::string_view r) {
    std::vector<Element> out;
    for (std::size_t x : detail::parse_list(r, ',', "rotation entry")) out.push_back(static_cast<Element>(x));
    return out;
  };
  if (auto at = s.find('@'); at != std::string::npos) {
    return CayleyMap(share(parse_group_spec(s.substr(0, at))), to_rotation(std::string_view(s).substr(at + 1)));
  }
  if (!s.empty() && (s[0] == 'z' || s[0] == 'Z')) {
    auto colon = s.find(':');
    CIMLAB_REQUIRE(colon != std::string::npos, ErrorKind::parse, "map spec 'zN:...' needs a colon");
    std::size_t n = detail::parse_size(std::string_view(s).substr(1, colon - 1), "cyclic order");
    return CayleyMap(share(make_cyclic(n)), to_rotation(std::string_view(s).substr(colon + 1)));
  }
  throw Error(ErrorKind::parse, "unrecognised map spec '" + s + "'");
}

// ---------------------------------------------------------------------------
// Serialization

inline json permutation_json(Permutation const& p) { return json{{"degree", p.degree()}, {"images", p.images()}}; }

inline Permutation permutation_from_json(json const& j) {
  auto images = j.at("images").get<std::vector<Element>>();
  CIMLAB_REQUIRE(images.size() == j.at("degree").get<std::size_t>(), ErrorKind::parse, "degree mismatch");
  return Permutation(std::move(images));
}

inline json permutation_group_json(std::size_t degree, std::vector<Permutation> const& gens, std::size_t order) {
  json g = json::array();
  for (auto const& p : gens) g.push_back(p.images());
  return json{{"degree", degree}, {"order", order}, {"generators", g}};
}

inline json permutation_group_json(PermutationGroup const& g) {
  return permutation_group_json(g.degree(), g.generators(), g.order());
}

inline json group_table_json(FiniteGroup const& g) {
  json rows = json::array();
  for (Element a = 0; a < g.order(); ++a) {
    std::string row;
    for (Element b = 0; b < g.order(); ++b) row += (b ? " " : "") + std::to_string(g.mul(a, b));
    rows.push_back(row);
  }
  return json{{"order", g.order()}, {"table", rows}};
}

inline FiniteGroup group_from_json(std::string const& name, json const& j) {
  std::size_t const n = j.at("order").get<std::size_t>();
  auto const& rows = j.at("table");
  CIMLAB_REQUIRE(rows.size() == n, ErrorKind::parse, "group table needs " + std::to_string(n) + " rows");
  std::vector<Element> flat;
  for (auto const& r : rows) {
    for (std::size_t x : detail::parse_list(r.get<std::string>(), ' ', "table entry")) flat.push_back(static_cast<Element>(x));
  }
  return FiniteGroup(name, n, std::move(flat));
}

/// Collects the groups referenced by serialized maps under unique keys.
class GroupRegistry {
 public:
  std::string key(FiniteGroup const& g) {
    std::string base = g.name();
    for (int i = 0;; ++i) {
      std::string k = i == 0 ? base : base + "~" + std::to_string(i);
      auto it = groups_.find(k);
      if (it == groups_.end()) {
        groups_.emplace(k, group_table_json(g));
        return k;
      }
      if (it->second == group_table_json(g)) return k;
    }
  }
  json const& groups() const { return groups_json(); }

 private:
  json const& groups_json() const {
    cache_ = json::object();
    for (auto const& [k, v] : groups_) cache_[k] = v;
    return cache_;
  }
  std::map<std::string, json> groups_;
  mutable json cache_;
};

inline json map_json(CayleyMap const& m, GroupRegistry& reg) {
  return json{{"group", reg.key(m.group())}, {"rotation", m.rotation()}};
}

/// A standalone map document: {"group": <spec or table>, "rotation": [...]}.
inline CayleyMap map_from_json(json const& j) {
  CIMLAB_REQUIRE(j.is_object() && j.contains("group") && j.contains("rotation"), ErrorKind::parse,
                 "map JSON needs 'group' and 'rotation'");
  for (auto const& [k, v] : j.items()) {
    CIMLAB_REQUIRE(k == "group" || k == "rotation", ErrorKind::parse, "unknown map field '" + k + "'");
  }
  auto const& g = j.at("group");
  GroupPtr h = g.is_string() ? share(parse_group_spec(g.get<std::string>())) : share(group_from_json("group", g));
  return CayleyMap(h, j.at("rotation").get<std::vector<Element>>());
}

inline CayleyMap map_from_json(json const& j, std::map<std::string, GroupPtr> const& groups) {
  auto it = groups.find(j.at("group").get<std::string>());
  CIMLAB_REQUIRE(it != groups.end(), ErrorKind::parse, "map refers to unknown group");
  return CayleyMap(it->second, j.at("rotation").get<std::vector<Element>>());
}

inline json witness_json(CiWitness const& w, GroupRegistry& reg) {
  json j{{"kind", std::string(to_string(w.kind))}};
  if (w.subgroup_order) {
    json gens = json::array();
    for (auto const& p : w.subgroup_generators) gens.push_back(p.images());
    j["subgroup"] = json{{"order", w.subgroup_order}, {"generators", gens}};
  }
  if (w.map) j["map"] = map_json(*w.map, reg);
  if (w.other) j["other"] = map_json(*w.other, reg);
  if (w.isomorphism) j["isomorphism"] = w.isomorphism->images();
  if (w.conjugator) j["conjugator"] = w.conjugator->images();
  return j;
}

inline json report_json(CiReport const& r, GroupRegistry& reg, bool timings = false) {
  json w = json::array();
  for (auto const& x : r.witnesses) w.push_back(witness_json(x, reg));
  json j{{"subject", r.subject},
         {"verdict", r.verdict},
         {"method", std::string(to_string(r.method))},
         {"counts", r.counts},
         {"notes", r.notes},
         {"witnesses", w}};
  if (timings && r.elapsed_seconds) j["elapsed_seconds"] = *r.elapsed_seconds;
  return j;
}

inline json witnessed_map_json(WitnessedMap const& w, GroupRegistry& reg) {
  return json{{"map", map_json(w.map, reg)},
              {"ambient", permutation_group_json(w.ambient)},
              {"rival", permutation_group_json(w.rival)},
              {"notes", w.notes}};
}

inline std::map<std::string, GroupPtr> groups_from_json(json const& j) {
  std::map<std::string, GroupPtr> out;
  for (auto const& [k, v] : j.items()) out.emplace(k, share(group_from_json(k, v)));
  return out;
}

/// Re-checks every witness in a serialized report against freshly computed structure.
/// Map pairs must be isomorphic via the recorded bijection and not Cayley isomorphic;
/// rival subgroups must be regular subgroups of Aut(map) not conjugate to the left-regular copy.
inline bool reverify_report(json const& report, json const& groups, Caps const& caps = {}) {
  auto gs = groups_from_json(groups);
  for (auto const& w : report.at("witnesses")) {
    std::string kind = w.at("kind").get<std::string>();
    if (kind == "conjugator") continue;
    if (!w.contains("map")) return false;
    CayleyMap m = map_from_json(w.at("map"), gs);
    if (w.contains("other")) {
      CayleyMap o = map_from_json(w.at("other"), gs);
      if (!w.contains("isomorphism")) return false;
      Permutation iso(w.at("isomorphism").get<std::vector<Element>>());
      if (!is_map_isomorphism(o, m, iso)) return false;
      if (are_cayley_isomorphic(m, o, caps)) return false;
    }
    if (kind == "rival-subgroup") {
      std::vector<Permutation> gens;
      for (auto const& g : w.at("subgroup").at("generators")) gens.emplace_back(g.get<std::vector<Element>>());
      PermutationGroup r = closure(gens, m.group().order(), caps.perm_group_order);
      if (!is_regular(r) || r.order() != w.at("subgroup").at("order").get<std::size_t>()) return false;
      auto aut = map_automorphism_group(m);
      for (auto const& p : r.elements()) {
        if (!aut.contains(p)) return false;
      }
      if (are_conjugate_subgroups(aut, r, left_regular_representation(m.group()))) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Output

namespace detail {

inline bool is_flat(json const& j) {
  return std::all_of(j.begin(), j.end(), [](json const& x) { return x.is_primitive(); });
}

inline void write_pretty(std::ostream& os, json const& j, int indent) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  std::string inner(static_cast<std::size_t>(indent + 2), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      os << inner << json(it.key()).dump() << ": ";
      write_pretty(os, it.value(), indent + 2);
      os << (i + 1 < j.size() ? ",\n" : "\n");
    }
    os << pad << "}";
  } else if (j.is_array()) {
    if (j.empty() || is_flat(j)) {
      os << j.dump();
      return;
    }
    os << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      os << inner;
      write_pretty(os, j[i], indent + 2);
      os << (i + 1 < j.size() ? ",\n" : "\n");
    }
    os << pad << "]";
  } else {
    os << j.dump();
  }
}

}  // namespace detail

/// Pretty JSON with sorted keys; arrays of scalars stay on one line.
inline std::string dump_pretty(json const& j) {
  std::ostringstream os;
  detail::write_pretty(os, j, 0);
  os << '\n';
  return os.str();
}

}  // namespace cimlab::io
