#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "cimlab/cli.hpp"

using namespace cimlab;
using io::json;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "cimlab");
  std::vector<char const*> argv;
  for (auto const& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(std::filesystem::path const& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int shell(std::string const& cmd) {
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, GoldenOutputs) {
  std::filesystem::path const dir = CIMLAB_GOLDEN_DIR;
  auto v = run({"verify-cim", "--group", "cyclic:8", "--max-valency", "7"});
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(v.out, slurp(dir / "verify_cim_cyclic8.json"));
  auto c = run({"is-ci-map", "--map", "z9:1,5,7,8,4,2"});
  EXPECT_EQ(c.code, 1);
  EXPECT_EQ(c.out, slurp(dir / "is_ci_map_z9.json"));
  auto a = run({"aut-map", "--map", "z8:1,3,5,7"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, slurp(dir / "aut_map_z8.json"));
}

TEST(Cli, AutMapOrder) {
  auto j = json::parse(run({"aut-map", "--map", "z8:1,3,5,7"}).out);
  EXPECT_EQ(j["result"]["order"], 32);
  EXPECT_EQ(j["tool"], "cimlab");
  EXPECT_EQ(j["config"]["map"], "z8:1,3,5,7");
}

TEST(Cli, VerifyCimCountsLogged) {
  auto j = json::parse(run({"verify-cim", "--group", "cyclic:8", "--max-valency", "7"}).out);
  EXPECT_EQ(j["result"]["verdict"], true);
  EXPECT_EQ(j["result"]["counts"]["maps_checked"], 940);
}

TEST(Cli, MethodsAgree) {
  auto b = run({"is-ci-map", "--map", "z9:1,5,7,8,4,2", "--method", "babai"});
  auto d = run({"is-ci-map", "--map", "z9:1,5,7,8,4,2", "--method", "definitional"});
  EXPECT_EQ(b.code, 1);
  EXPECT_EQ(d.code, 1);
  EXPECT_EQ(json::parse(d.out)["result"]["method"], "definitional");
}

TEST(Cli, WitnessesReverifyAfterReload) {
  for (auto const& args : std::vector<std::vector<std::string>>{
           {"is-ci-map", "--map", "z9:1,5,7,8,4,2"},
           {"is-ci-map", "--map", "z9:1,5,7,8,4,2", "--method", "definitional"},
           {"verify-connected-cim", "--group", "abelian:3,3", "--max-valency", "6"},
           {"verify-cim", "--group", "cyclic:9", "--max-valency", "6"},
           {"is-ci-map", "--map", "quaternion:8@1,4,3,6"}}) {
    auto o = run(args);
    ASSERT_NE(o.code, 2) << o.err;
    auto j = json::parse(o.out);
    EXPECT_TRUE(io::reverify_report(j["result"], j["groups"])) << args[2];
  }
}

TEST(Cli, MapJsonRoundTrip) {
  auto f = frobenius_z7_map();
  io::GroupRegistry reg;
  json j = io::map_json(f.witnessed.map, reg);
  auto back = io::map_from_json(json::parse(io::dump_pretty(j)), io::groups_from_json(reg.groups()));
  EXPECT_EQ(back, f.witnessed.map);

  // standalone file with the group table embedded
  json file{{"group", reg.groups()[j["group"].get<std::string>()]}, {"rotation", j["rotation"]}};
  auto path = std::filesystem::temp_directory_path() / "cimlab_map_roundtrip.json";
  std::ofstream(path) << file.dump();
  EXPECT_EQ(io::parse_map_spec(path.string()), f.witnessed.map);
  auto o = run({"is-ci-map", "--map", path.string()});
  EXPECT_EQ(o.code, 1);
  std::filesystem::remove(path);
}

TEST(Cli, UnknownFieldsRejected) {
  json j = json::parse(R"({"group": "cyclic:8", "rotation": [1, 7], "colour": "red"})");
  EXPECT_THROW(io::map_from_json(j), Error);
}

TEST(Cli, OutFileMatchesStdout) {
  auto path = std::filesystem::temp_directory_path() / "cimlab_out_test.json";
  auto o = run({"cross-validate", "--group", "dihedral:3", "--out", path.string()});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(slurp(path), o.out);
  std::filesystem::remove(path);
}

TEST(Cli, ErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"verify-cim", "--group", "cyclic:x"}).code, 2);
  EXPECT_EQ(run({"verify-cim", "--group", "cyclic:9"}).code, 2);
  EXPECT_EQ(run({"verify-cim", "--group", "cyclic:8", "--max-valency", "9"}).code, 2);
  EXPECT_EQ(run({"is-ci-map", "--map", "z8:1,2"}).code, 2);
  EXPECT_EQ(run({"is-ci-map", "--map", "z8:1,7", "--method", "magic"}).code, 2);
  EXPECT_EQ(run({"cross-validate", "--group", "cyclic:9"}).code, 2);
  EXPECT_EQ(run({"counterexample", "--family", "nope"}).code, 2);
  EXPECT_EQ(run({"verify-cim", "--group", "cyclic:8", "--format", "yaml"}).code, 2);
  auto o = run({"is-ci-map", "--map", "z8:0,1,7"});
  EXPECT_NE(o.err.find("identity"), std::string::npos);
}

TEST(Cli, IsoMapsExitCodes) {
  EXPECT_EQ(run({"iso-maps", "--map1", "z8:1,3,5,7", "--map2", "z8:1,7,5,3"}).code, 0);
  EXPECT_EQ(run({"iso-maps", "--map1", "z8:1,3,5,7", "--map2", "z8:1,2,6,7"}).code, 1);
}

TEST(Cli, Counterexamples) {
  auto q = run({"counterexample", "--family", "q16"});
  ASSERT_EQ(q.code, 0) << q.err;
  EXPECT_EQ(json::parse(q.out)["result"]["cayley_isomorphic"], false);
  for (auto const& args : std::vector<std::vector<std::string>>{
           {"counterexample", "--family", "odd-square", "--p", "3", "--kind", "elementary"},
           {"counterexample", "--family", "cyclic-2power", "--n", "4"},
           {"counterexample", "--family", "frobenius", "--variant", "z7"}}) {
    auto o = run(args);
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(json::parse(o.out)["result"]["babai_verdict"], false);
  }
}

TEST(Cli, BinaryExitCodesAndCapOverride) {
  std::string const bin = CIMLAB_CLI_PATH;
  EXPECT_EQ(shell(bin + " verify-cim --group cyclic:8 --max-valency 7 > /dev/null"), 0);
  EXPECT_EQ(shell(bin + " is-ci-map --map z9:1,5,7,8,4,2 > /dev/null"), 1);
  EXPECT_EQ(shell("CIMLAB_CAP_ORDER=4 " + bin + " verify-cim --group cyclic:8 > /dev/null 2>&1"), 2);
  EXPECT_EQ(shell("CIMLAB_CAP_ORDER=0 " + bin + " verify-cim --group cyclic:8 > /dev/null 2>&1"), 2);
}

TEST(Cli, UnsupportedReductionIsAnError) {
  auto o = run({"verify-cim", "--group", "abelian:3,3", "--max-valency", "4"});
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("unsupported-reduction"), std::string::npos);
}

TEST(Cli, OutputIndependentOfWorkers) {
  auto a = run({"verify-cim", "--group", "cyclic:9", "--max-valency", "6", "--workers", "1"});
  auto b = run({"verify-cim", "--group", "cyclic:9", "--max-valency", "6", "--workers", "3"});
  EXPECT_EQ(a.out, b.out);
  auto t = json::parse(run({"aut-map", "--map", "z8:1,7", "--timings", "--workers", "2"}).out);
  EXPECT_EQ(t["config"]["workers"], 2);
}
