#pragma once

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cimlab/ci.hpp"
#include "cimlab/constructions.hpp"
#include "cimlab/json_io.hpp"
#include "cimlab/reproduce.hpp"

namespace cimlab::cli {

using io::json;

/// Exit codes: verdict true / false / any error.
enum ExitCode : int { kTrue = 0, kFalse = 1, kError = 2 };

struct Config {
  std::string command;
  std::string group;
  std::string map;
  std::string map1;
  std::string map2;
  std::optional<std::size_t> max_valency;
  std::string method = "babai";
  std::size_t workers = 1;
  std::string out;
  std::string format = "json";
  bool timings = false;
  std::string family;
  std::size_t p = 3;
  std::size_t n = 4;
  std::string kind = "cyclic";
  std::string variant = "z7";
  Caps caps{};
};

namespace detail {

inline json config_json(Config const& c) {
  json j{{"command", c.command}, {"caps", {{"group_order", c.caps.group_order},
                                                                   {"perm_group_order", c.caps.perm_group_order},
                                                                   {"definitional_maps", c.caps.definitional_maps}}}};
  // worker count only with timings, so the default output does not depend on it
  if (c.timings) j["workers"] = c.workers;
  if (!c.group.empty()) j["group"] = c.group;
  if (!c.map.empty()) j["map"] = c.map;
  if (!c.map1.empty()) j["map1"] = c.map1;
  if (!c.map2.empty()) j["map2"] = c.map2;
  if (c.max_valency) j["max_valency"] = *c.max_valency;
  if (c.command == "is-ci-map") j["method"] = c.method;
  if (c.command == "counterexample") j["family"] = c.family;
  return j;
}

inline json envelope(Config const& c, json body, io::GroupRegistry const& reg) {
  json j{{"tool", "cimlab"}, {"version", kVersion}, {"command", c.command}, {"config", config_json(c)}, {"result", std::move(body)}};
  if (!reg.groups().empty()) j["groups"] = reg.groups();
  return j;
}

inline int verdict_code(bool v) { return v ? kTrue : kFalse; }

inline std::size_t resolve_valency(Config const& c, FiniteGroup const& h) {
  std::size_t const full = h.order() == 1 ? 0 : h.order() - 1;
  if (c.max_valency) {
    CIMLAB_REQUIRE(*c.max_valency <= full, ErrorKind::invalid_argument,
                   "--max-valency must be at most |H| - 1 = " + std::to_string(full));
    return *c.max_valency;
  }
  CIMLAB_REQUIRE(h.order() <= 8, ErrorKind::invalid_argument, "--max-valency is required for groups of order > 8");
  return full;
}

inline int run_command(Config const& c, json& body, io::GroupRegistry& reg) {
  auto const t0 = std::chrono::steady_clock::now();
  auto stamp = [&](CiReport& r) {
    if (c.timings) r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  if (c.command == "aut-map") {
    CayleyMap m = io::parse_map_spec(c.map);
    auto aut = map_automorphism_group(m);
    body = json{{"map", io::map_json(m, reg)},
                {"order", aut.order()},
                {"stabilizer_order", point_stabilizer(aut, 0).order()},
                {"balanced", is_balanced(m)},
                {"antibalanced", is_antibalanced(m)},
                {"generators", io::permutation_group_json(aut)["generators"]}};
    return kTrue;
  }
  if (c.command == "iso-maps") {
    CayleyMap m1 = io::parse_map_spec(c.map1);
    CayleyMap m2 = io::parse_map_spec(c.map2);
    auto iso = find_map_isomorphism(m1, m2);
    body = json{{"map1", io::map_json(m1, reg)}, {"map2", io::map_json(m2, reg)}};
    body["isomorphism"] = iso ? json(iso->images()) : json("none");
    std::optional<GroupIsomorphism> cayley;
    if (iso) cayley = are_cayley_isomorphic(m1, m2, c.caps);
    body["cayley_isomorphism"] = cayley ? json(cayley->images) : json("none");
    return verdict_code(iso.has_value());
  }
  if (c.command == "is-ci-map") {
    CayleyMap m = io::parse_map_spec(c.map);
    CiReport r;
    if (c.method == "babai") {
      r = babai_is_ci_map(m, c.caps);
    } else if (c.method == "definitional") {
      r = definitional_is_ci_map(m, DefinitionalMode::extension, c.caps);
    } else {
      throw Error(ErrorKind::invalid_argument, "--method must be babai or definitional");
    }
    stamp(r);
    body = io::report_json(r, reg, c.timings);
    return verdict_code(r.verdict);
  }
  if (c.command == "verify-cim" || c.command == "verify-connected-cim") {
    GroupPtr h = share(io::parse_group_spec(c.group));
    CimOptions o;
    o.max_valency = resolve_valency(c, *h);
    o.workers = c.workers;
    o.caps = c.caps;
    CiReport r = c.command == "verify-cim" ? verify_cim_group(h, o) : verify_connected_cim(h, o);
    stamp(r);
    body = io::report_json(r, reg, c.timings);
    return verdict_code(r.verdict);
  }
  if (c.command == "cross-validate") {
    GroupPtr h = share(io::parse_group_spec(c.group));
    CiReport r = cross_validate(h, c.workers, c.caps);
    stamp(r);
    body = io::report_json(r, reg, c.timings);
    return verdict_code(r.verdict);
  }
  if (c.command == "counterexample") {
    if (c.family == "odd-square") {
      CIMLAB_REQUIRE(c.kind == "cyclic" || c.kind == "elementary", ErrorKind::invalid_argument,
                     "--kind must be cyclic or elementary");
      auto w = odd_square_map(c.p, c.kind == "cyclic" ? SquareKind::cyclic : SquareKind::elementary, std::nullopt,
                              c.caps);
      body = io::witnessed_map_json(w, reg);
      body["babai_verdict"] = babai_is_ci_map(w.map, c.caps).verdict;
    } else if (c.family == "cyclic-2power") {
      auto w = cyclic_2power_map(c.n, c.caps);
      body = io::witnessed_map_json(w, reg);
      body["babai_verdict"] = babai_is_ci_map(w.map, c.caps).verdict;
    } else if (c.family == "frobenius") {
      CIMLAB_REQUIRE(c.variant == "z7" || c.variant == "klein", ErrorKind::invalid_argument,
                     "--variant must be z7 or klein");
      auto f = c.variant == "z7" ? frobenius_z7_map(c.caps) : frobenius_klein_map(c.caps);
      body = io::witnessed_map_json(f.witnessed, reg);
      body["sigma"] = f.data.sigma.images();
      body["babai_verdict"] = babai_is_ci_map(f.witnessed.map, c.caps).verdict;
    } else if (c.family == "q16") {
      auto q = quaternion16_witness();
      body = json{{"map", io::map_json(q.map, reg)},
                  {"cyclic_map", io::map_json(q.cyclic_map, reg)},
                  {"isomorphism", q.relabel.images()},
                  {"cayley_isomorphic", are_cayley_isomorphic(q.map, q.cyclic_map, c.caps).has_value()}};
    } else {
      throw Error(ErrorKind::invalid_argument, "--family must be odd-square, cyclic-2power, frobenius or q16");
    }
    return kTrue;
  }
  if (c.command == "reproduce-paper") {
    ReproduceOptions o;
    o.workers = c.workers;
    o.timings = c.timings;
    o.caps = c.caps;
    body = reproduce_all(o);
    return kTrue;
  }
  throw Error(ErrorKind::invalid_argument, "unknown command '" + c.command + "'");
}

}  // namespace detail

/// Parses argv, runs one subcommand, writes JSON to `out` (and --out if given).
inline int run(int argc, char const* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  Config c;
  if (char const* cap = std::getenv("CIMLAB_CAP_ORDER")) {
    try {
      c.caps.group_order = static_cast<std::size_t>(std::stoul(cap));
    } catch (std::exception const&) {
      err << "error: parse: CIMLAB_CAP_ORDER must be a positive integer\n";
      return kError;
    }
    if (c.caps.group_order == 0) {
      err << "error: parse: CIMLAB_CAP_ORDER must be a positive integer\n";
      return kError;
    }
  }

  CLI::App app{"Cayley map isomorphism workbench"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--workers", c.workers, "worker threads")->check(CLI::Range(1, 256));
    sub->add_option("--out", c.out, "also write the JSON document to this file");
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json"}));
    sub->add_flag("--timings", c.timings, "include wall-clock seconds (output is no longer byte-stable)");
  };

  auto* aut = app.add_subcommand("aut-map", "automorphism group of a connected Cayley map");
  aut->add_option("--map", c.map, "map spec")->required();
  auto* iso = app.add_subcommand("iso-maps", "isomorphism between two Cayley maps");
  iso->add_option("--map1", c.map1, "map spec")->required();
  iso->add_option("--map2", c.map2, "map spec")->required();
  auto* ci = app.add_subcommand("is-ci-map", "CI verdict for one map");
  ci->add_option("--map", c.map, "map spec")->required();
  ci->add_option("--method", c.method, "babai or definitional")->check(CLI::IsMember({"babai", "definitional"}));
  auto* vc = app.add_subcommand("verify-cim", "exhaustive CIM check of a group");
  auto* vcc = app.add_subcommand("verify-connected-cim", "exhaustive check restricted to connected maps");
  for (auto* sub : {vc, vcc}) {
    sub->add_option("--group", c.group, "group spec")->required();
    sub->add_option("--max-valency", c.max_valency, "largest |S| (required when |H| > 8)");
  }
  auto* xv = app.add_subcommand("cross-validate", "definitional oracle versus Babai's criterion, |H| <= 8");
  xv->add_option("--group", c.group, "group spec")->required();
  auto* cx = app.add_subcommand("counterexample", "explicit non-CI constructions");
  cx->add_option("--family", c.family, "odd-square | cyclic-2power | frobenius | q16")->required();
  cx->add_option("--p", c.p, "odd prime for odd-square");
  cx->add_option("--kind", c.kind, "cyclic | elementary for odd-square");
  cx->add_option("--n", c.n, "exponent for cyclic-2power");
  cx->add_option("--variant", c.variant, "z7 | klein for frobenius");
  auto* rp = app.add_subcommand("reproduce-paper", "run the full battery and print a summary table");
  for (auto* sub : {aut, iso, ci, vc, vcc, xv, cx, rp}) common(sub);

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    out << app.help();
    return kTrue;
  } catch (CLI::CallForVersion const& e) {
    out << kVersion << '\n';
    return kTrue;
  } catch (CLI::ParseError const& e) {
    err << "error: parse: " << e.what() << '\n';
    return kError;
  }
  c.command = app.get_subcommands().front()->get_name();

  try {
    json body;
    io::GroupRegistry reg;
    int code = detail::run_command(c, body, reg);
    std::string text = io::dump_pretty(detail::envelope(c, std::move(body), reg));
    out << text;
    if (!c.out.empty()) {
      std::ofstream f(c.out);
      if (!f) {
        err << "error: cannot write " << c.out << '\n';
        return kError;
      }
      f << text;
    }
    return code;
  } catch (Error const& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  } catch (std::exception const& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
}

}  // namespace cimlab::cli
