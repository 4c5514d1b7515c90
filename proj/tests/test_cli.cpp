#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "flatchain/cli.hpp"
#include "flatchain/io.hpp"
#include "flatchain/slicing.hpp"
#include "support.hpp"

using namespace flatchain;
using testing_support::pt;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("flatchain_cli_" + name);
  std::ofstream(path) << content;
  return path.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("chi prints the group sum") {
  auto f = temp_file("two.json", R"({"group": {"kind": "Integers"}, "ambient": 1, "dim": 0,
    "terms": [{"coeff": 2, "simplex": [["0"]]}, {"coeff": 5, "simplex": [["3"]]}]})");
  auto r = run({"chi", "--input", f});
  CHECK(r.code == 0);
  CHECK(r.err.find("chi = 7") != std::string::npos);
}

TEST_CASE("flatnorm bracket is ordered") {
  auto f = temp_file("seg.json", R"({"group": {"kind": "Reals"}, "ambient": 2, "dim": 1,
    "terms": [{"coeff": "3/2", "simplex": [["0", "0"], ["2", "1"]]}]})");
  auto r = run({"flatnorm", "--input", f});
  REQUIRE(r.code == 0);
  auto j = io::parse_text(r.out);
  CHECK(j["lower"].get<double>() <= j["upper"].get<double>());
  CHECK(j.contains("witness_mass"));
}

TEST_CASE("deform reproduces a grid cube chain") {
  auto z = GroupDescriptor::integers();
  auto cube = grid_cube(GroupElement::from_integer(z, 2), pt({1, 0}), 1, {0, 1});
  auto text = io::dump(io::to_json(cube));
  auto f = temp_file("cube.json", text);
  auto r = run({"deform", "--input", f, "--eps", "1", "--seed", "7"});
  REQUIRE(r.code == 0);
  CHECK(r.out == text);
}

TEST_CASE("randomized commands are reproducible and need a seed") {
  auto f = temp_file("tri.json", R"({"group": {"kind": "Integers"}, "ambient": 2, "dim": 1,
    "terms": [{"coeff": 1, "simplex": [["0", "0"], ["3", "1"]]}, {"coeff": 1, "simplex": [["3", "1"], ["1", "4"]]}]})");
  auto out1 = temp_file("stats1.csv", ""), out2 = temp_file("stats2.csv", "");
  CHECK(run({"slice-stats", "--input", f, "--seed", "5", "--samples", "20", "--format", "csv", "--output", out1}).code == 0);
  CHECK(run({"slice-stats", "--input", f, "--seed", "5", "--samples", "20", "--format", "csv", "--output", out2}).code == 0);
  CHECK(slurp(out1) == slurp(out2));
  CHECK(slurp(out1).rfind("# seed=5", 0) == 0);
  CHECK(run({"slice-stats", "--input", f}).code == cli::kExitUsage);
}

TEST_CASE("exit codes") {
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run({}).code == cli::kExitUsage);
  auto help = run({"--help"});
  CHECK(help.code == cli::kExitOk);
  CHECK(help.out.find("commands:") != std::string::npos);
  CHECK(run({"mass", "-h"}).code == cli::kExitOk);
  CHECK(run({"mass", "--input", "/nonexistent/file.json"}).code == cli::kExitUsage);
  auto overlap = temp_file("overlap.json", R"({"group": {"kind": "Integers"}, "ambient": 2, "dim": 2, "terms": [
    {"coeff": 1, "simplex": [["0","0"],["2","0"],["0","2"]]},
    {"coeff": 1, "simplex": [["1/2","1/2"],["3","1/2"],["1/2","3"]]}]})");
  CHECK(run({"mass", "--input", overlap}).code == cli::kExitInvariant);
  auto seg = temp_file("vseg.json", R"({"group": {"kind": "Integers"}, "ambient": 2, "dim": 1,
    "terms": [{"coeff": 1, "simplex": [["0", "0"], ["1", "0"]]}]})");
  CHECK(run({"slice", "--input", seg, "--offset", "0"}).code == cli::kExitTransversality);
  CHECK(run({"slice", "--input", seg, "--offset", "1/2"}).code == 0);
}

TEST_CASE("every command is dispatched") {
  CHECK(cli::command_names().size() == 17);
  CHECK(run({"classify", "--format", "csv"}).code == 0);
  CHECK(run({"nonrect-demo", "--level", "3"}).code == 0);
  CHECK(run({"path-length", "--group", "RealsAlphaNorm", "--alpha", "1/2", "--level", "4"}).code == 0);
  auto two = temp_file("atoms.json", R"({"group": {"kind": "Reals"}, "ambient": 1, "dim": 0,
    "terms": [{"coeff": "1/2", "simplex": [["1/3"]]}, {"coeff": -1, "simplex": [["3/4"]]}]})");
  auto m = std::filesystem::temp_directory_path() / "flatchain_cli_measure.json";
  CHECK(run({"measure-build", "--input", two, "--level", "3", "--output", m.string()}).code == 0);
  CHECK(run({"measure-roundtrip", "--input", m.string()}).code == 0);
  CHECK(run({"cone-bound", "--input", two}).code == 0);
  auto seg = temp_file("seg2.json", R"({"group": {"kind": "Reals"}, "ambient": 2, "dim": 1,
    "terms": [{"coeff": 2, "simplex": [["0", "0"], ["1", "1"]]}]})");
  for (const char* c : {"mass", "boundary", "canonical", "size", "phi-mass", "ball-growth"})
    CHECK(run({c, "--input", seg}).code == 0);
}
