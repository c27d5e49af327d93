#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = SYLVAN_CLI_PATH;
const std::string kData = SYLVAN_DATA_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Run {
  int code;
  std::string out;
};

// Runs the CLI with stdout captured to a temp file; stderr is discarded.
Run run(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  fs::path out = fs::temp_directory_path() / ("sylvan_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  std::string cmd = env + " '" + kCli + "' " + args + " > '" + out.string() + "' 2>/dev/null";
  int status = std::system(cmd.c_str());
  Run r{WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out)};
  fs::remove(out);
  return r;
}

std::string data(const char* name) { return "'" + kData + "/" + name + "'"; }

}  // namespace

TEST_CASE("cli: rank of 1 - z over Q[Z]") {
  auto r = run("rank --spec " + data("qz.json") + " --matrix " + data("one_minus_z.json") +
               " --schedule 'box:2^k,k=2..6' --seed 3");
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["seed"] == 3);
  CHECK(j["command"] == "rank");
  CHECK(j.contains("version"));
}

TEST_CASE("cli: exit codes") {
  CHECK(run("rank --spec " + data("qz.json") + " --matrix " + data("z2.json") + " --schedule box:4,8,16").code == 1);
  CHECK(run("rank --spec '{\"kind\": }' --matrix " + data("one_minus_z.json") + " --schedule box:4,8").code == 1);
  CHECK(run("rank --spec " + data("qz.json") + " --matrix " + data("one_minus_z.json") + " --schedule spiral:4").code == 1);
  std::string col = "'{\"entries\": [[\"1 - z\"], [\"1 + z\"]]}'";
  CHECK(run("rank --spec " + data("qz.json") + " --matrix " + col + " --schedule box:4,8,16 --no-affine").code == 2);
  CHECK(run("rank --spec " + data("qz.json") + " --matrix " + col + " --schedule box:4,8,16").code == 0);
}

TEST_CASE("cli: identical seeds give identical bytes") {
  std::string args = "axioms --rank field --field gf7 --trials 50 --seed 42";
  auto a = run(args), b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  auto env = run("axioms --rank field --field gf7 --trials 50", "SYLVAN_SEED=42");
  CHECK(env.out == a.out);
  CHECK(json::parse(run("axioms --rank field --field gf7 --trials 5").out)["seed"] == 0);
}

TEST_CASE("cli: axioms over GF(7)") {
  auto r = run("axioms --rank field --field gf7 --trials 200 --seed 42");
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["passed"] == true);
}

TEST_CASE("cli: csv output") {
  fs::path csv = fs::temp_directory_path() / ("sylvan_cli_csv_" + std::to_string(::getpid()));
  auto r = run("rank --spec " + data("qz.json") + " --matrix " + data("one_minus_z.json") +
               " --schedule box:4,8,16 --csv '" + csv.string() + "'");
  REQUIRE(r.code == 0);
  auto text = slurp(csv);
  fs::remove(csv);
  CHECK(text.rfind("step,dimW,rank_value_num,rank_value_den,normalized_decimal", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}

TEST_CASE("cli: quasitile") {
  auto r = run("quasitile --tiling ow --d 2 --n 4 --N 40");
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["passed"] == true);
}
