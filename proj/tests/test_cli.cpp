#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bcirc/core.hpp"
#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace bcirc;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "bcirc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("bcirc_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("moments prints the exact theory column") {
  const auto r = run_cli({"moments", "--k-max", "5", "-m", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.out ==
        "k,order,m,exact,moment\n"
        "1,2,2,1,1\n"
        "2,4,2,9/4,2.25\n"
        "3,6,2,15/2,7.5\n"
        "4,8,2,525/16,32.8125\n"
        "5,10,2,2835/16,177.1875\n");
}

TEST_CASE("epsilon and pairing tables") {
  const auto eps = run_cli({"moments", "--what", "epsilon", "--k-max", "3"});
  REQUIRE(eps.code == 0);
  CHECK(eps.out == "k,g,epsilon\n1,0,1\n2,0,2\n2,1,1\n3,0,5\n3,1,10\n");

  const auto p = run_cli({"pairings", "-k", "4"});
  REQUIRE(p.code == 0);
  CHECK(p.out == "g,count,epsilon_formula\n0,14,14\n1,70,70\n2,21,21\n");
  CHECK(run_cli({"pairings", "-k", "9"}).code == cli::kExitUsage);
}

TEST_CASE("density columns and the Gaussian peak") {
  const auto r = run_cli({"density", "-m", "1,2,4,8,16", "--lo", "0", "--hi", "0.02", "--step", "0.01"});
  REQUIRE(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 4);
  CHECK(l[0] == "x,f_1,f_2,f_4,f_8,f_16,f_wig");
  CHECK(l[1].rfind("0,0.398942280401432", 0) == 0);
}

TEST_CASE("usage and configuration errors exit with 2") {
  CHECK(run_cli({}).code == cli::kExitUsage);
  CHECK(run_cli({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run_cli({"simulate", "--trials", "0"}).code == cli::kExitUsage);
  const auto bad = run_cli({"simulate", "-N", "401", "-m", "2", "--trials", "1"});
  CHECK(bad.code == cli::kExitUsage);
  CHECK(bad.err.find("does not divide") != std::string::npos);
  CHECK(run_cli({"moments", "--format", "xml"}).code == cli::kExitUsage);
  CHECK(run_cli({"eigs", "--input", "/nonexistent/matrix.csv"}).code == cli::kExitUsage);
  CHECK(run_cli({"pattern-moments"}).code == cli::kExitUsage);
  CHECK(run_cli({"eigs", "--kind", "toeplitz", "-N", "8", "-m", "2", "--solver", "block"}).code == cli::kExitUsage);
  CHECK(run_cli({"replay", "/nonexistent.json"}).code == cli::kExitUsage);
  CHECK(run_cli({"--help"}).code == cli::kExitOk);
}

TEST_CASE("exception to exit-code mapping") {
  CHECK(cli::exit_code_for(InvariantViolation("x")) == cli::kExitInvariant);
  CHECK(cli::exit_code_for(ConfigError("x")) == cli::kExitUsage);
  CHECK(cli::exit_code_for(std::out_of_range("x")) == cli::kExitUsage);
  CHECK(cli::exit_code_for(std::runtime_error("x")) == 1);
}

TEST_CASE("json format embeds the manifest") {
  const auto r = run_cli({"moments", "--k-max", "2", "--format", "json"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["columns"] == json({"k", "order", "m", "exact", "moment"}));
  CHECK(doc["rows"][1]["exact"] == "9/4");
  CHECK(doc["manifest"]["config"]["subcommand"] == "moments");
}

TEST_CASE("file output writes CSV plus manifest and replays byte-identically") {
  TempDir dir;
  const auto first = dir.path / "sim.csv";
  auto r = run_cli({"simulate", "-N", "60", "-m", "3", "--trials", "6", "--seed", "5", "--bins", "21", "-o",
                    first.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const std::string csv = slurp(first);
  CHECK(csv.rfind("bin_center,density,f_m,f_wig\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(lines(csv).size() == 22);

  const json manifest = json::parse(slurp(first.string() + ".manifest.json"));
  CHECK(manifest["config"]["N"] == 60);
  CHECK(manifest["config"]["seed"] == 5);
  CHECK(manifest["data"] == "sim.csv");
  CHECK(manifest["statistics"]["moments"].size() == 10);
  CHECK(manifest["statistics"]["moments"][3]["theory_exact"] == "19/9");

  const auto second = dir.path / "again.csv";
  r = run_cli({"replay", first.string() + ".manifest.json", "-o", second.string()});
  REQUIRE(r.code == 0);
  CHECK(slurp(second) == csv);
  json replayed = json::parse(slurp(second.string() + ".manifest.json"));
  CHECK(replayed["statistics"] == manifest["statistics"]);

  // Exact outputs too.
  const auto exact = dir.path / "m.csv";
  REQUIRE(run_cli({"moments", "-m", "7", "--k-max", "12", "-o", exact.string()}).code == 0);
  r = run_cli({"replay", exact.string() + ".manifest.json"});
  REQUIRE(r.code == 0);
  CHECK(r.out == slurp(exact));
}

TEST_CASE("results do not depend on the thread count") {
  const std::vector<std::string> base{"simulate", "-N", "48", "-m", "4", "--trials", "9", "--bins", "15"};
  auto one = base, many = base;
  one.insert(one.end(), {"--threads", "1"});
  many.insert(many.end(), {"--threads", "4"});
  const auto a = run_cli(one), b = run_cli(many);
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(a.out == b.out);

  const auto sa = run_cli({"spacings", "-N", "64", "--trials", "5", "--threads", "1"});
  const auto sb = run_cli({"spacings", "-N", "64", "--trials", "5", "--threads", "3"});
  REQUIRE(sa.code == 0);
  CHECK(sa.out == sb.out);
}

TEST_CASE("output directory comes from the environment") {
  TempDir dir;
  ::setenv(cli::kOutputDirEnv, dir.path.c_str(), 1);
  const auto r = run_cli({"pairings", "-k", "3"});
  ::unsetenv(cli::kOutputDirEnv);
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  CHECK(slurp(dir.path / "pairings.csv") == "g,count,epsilon_formula\n0,5,5\n1,10,10\n");
  CHECK(fs::exists(dir.path / "pairings.csv.manifest.json"));
}

TEST_CASE("generate and eigs round trip through a matrix file") {
  TempDir dir;
  const auto mat = dir.path / "a.csv";
  REQUIRE(run_cli({"generate", "-N", "12", "-m", "3", "--seed", "4", "-o", mat.string()}).code == 0);
  const auto l = lines(slurp(mat));
  REQUIRE(l.size() == 13);
  CHECK(l[0].rfind("c1,c2,c3", 0) == 0);
  const json gen = json::parse(slurp(mat.string() + ".manifest.json"));
  CHECK(gen["statistics"]["free_parameters"] == 21);

  const auto from_file = run_cli({"eigs", "--input", mat.string()});
  const auto direct = run_cli({"eigs", "-N", "12", "-m", "3", "--seed", "4", "--solver", "dense"});
  REQUIRE(from_file.code == 0);
  REQUIRE(direct.code == 0);
  CHECK(from_file.out == direct.out);
  CHECK(lines(direct.out).size() == 13);
  CHECK(lines(direct.out)[0] == "eigenvalue");

  const auto fast = run_cli({"eigs", "-N", "12", "-m", "3", "--seed", "4", "--solver", "block"});
  const auto fl = lines(fast.out), dl = lines(direct.out);
  REQUIRE(fl.size() == dl.size());
  for (std::size_t i = 1; i < fl.size(); ++i) CHECK(std::abs(std::stod(fl[i]) - std::stod(dl[i])) < 1e-10);

  std::ofstream(dir.path / "bad.csv") << "1,inf\ninf,1\n";
  CHECK(run_cli({"eigs", "--input", (dir.path / "bad.csv").string()}).code == cli::kExitUsage);
}

TEST_CASE("pattern moments table") {
  const auto r = run_cli({"pattern-moments", "--pattern", "aabb", "-N", "16", "--k-max", "3"});
  REQUIRE(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 4);
  CHECK(l[0] == "k,order,analytic,finite_exact,pairing_count,simulated,standard_error,N,trials");
  CHECK(l[1].rfind("1,2,1,1,1,,,16,0", 0) == 0);
  CHECK(l[2].rfind("2,4,2.25,", 0) == 0);

  const auto sim = run_cli({"pattern-moments", "--pattern", "abab", "-N", "40", "--k-max", "2", "--trials", "4"});
  REQUIRE(sim.code == 0);
  // N = 40 is past the exact enumeration range, so only that cell is blank.
  CHECK(lines(sim.out)[2].rfind("2,4,2.25,,", 0) == 0);
  CHECK(lines(sim.out)[2].find(",,,") == std::string::npos);
  CHECK(lines(sim.out)[2].ends_with(",40,4"));
}

TEST_CASE("pattern flag implies the generalized kind") {
  const auto r = run_cli({"generate", "--pattern", "aabb", "-N", "8", "--format", "json"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["manifest"]["config"]["kind"] == "pattern");
  CHECK(doc["manifest"]["config"]["m"] == 4);
  CHECK(doc["manifest"]["statistics"]["free_parameters"] ==
        json::parse(run_cli({"generate", "-N", "8", "-m", "2", "--format", "json"}).out)["manifest"]["statistics"]
                                                                                        ["free_parameters"]);
}

TEST_CASE("spacings statistics for the symmetric circulant") {
  const auto r = run_cli({"spacings", "--kind", "circulant", "-m", "1", "-N", "256", "--trials", "20",
                          "--central", "40", "--format", "json"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  const auto& s = doc["manifest"]["statistics"];
  CHECK(std::abs(s["zero_fraction"].get<double>() - 0.5) < 0.05);
  CHECK(s["ks_exponential"].get<double>() < s["ks_goe_surmise"].get<double>());
}

TEST_CASE("run config JSON round trip") {
  cli::RunConfig c;
  c.subcommand = "density";
  c.m_list = {3, 5};
  c.seed = 1ULL << 60;
  c.lo = -2.5;
  const auto back = cli::run_config_from_json(cli::to_json(c));
  CHECK(cli::to_json(back) == cli::to_json(c));
  CHECK_THROWS_AS(cli::run_config_from_json(json::array()), ConfigError);
  CHECK_THROWS_AS(cli::run_config_from_json(json{{"N", 4}}), ConfigError);
  CHECK_THROWS_AS(cli::run_config_from_json(json{{"subcommand", "moments"}, {"N", "many"}}), ConfigError);
}
