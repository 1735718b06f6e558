#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cli_app.hpp"

using majolab::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = majolab::cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) {
  const char* dir = std::getenv("MAJOLAB_TEST_DATA");
  return (fs::path(dir ? dir : "tests/data") / name).string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "majolab_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Spectrum, HeisenbergJson) {
  const auto r = run({"spectrum", "--model", "heisenberg", "--delta", "2", "--modes", "8", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j.at("weights").size(), 256u);
  EXPECT_EQ(j.at("M"), 8);
  EXPECT_TRUE(j.contains("tail_bound"));
  double sum = 0.0;
  for (double w : j.at("weights")) sum += w;
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(Spectrum, XYInsideCircleIsConfigError) {
  const auto r = run({"spectrum", "--model", "xy", "--lambda", "0.5", "--gamma", "0.1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("circle"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST(Spectrum, CftTower) {
  const auto r = run({"spectrum", "--model", "cft", "--spec", data("ising_like.json"), "--L", "16"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  const double q = std::exp(-2.0 * std::numbers::pi / std::log(16.0));
  EXPECT_NEAR(j.at("q").get<double>(), q, 1e-15);
  const double z = 1.0 + std::pow(q, 0.125) + std::pow(q, 1.0) + std::pow(q, 1.125) + 2.0 * q * q;
  EXPECT_NEAR(j.at("weights")[0].get<double>(), 1.0 / z, 1e-14);
}

TEST(Spectrum, CsvCarriesTailBound) {
  const auto r = run({"spectrum", "--model", "xx", "--L", "8", "--modes", "3", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("# tail_bound=", 0), 0u);
  EXPECT_NE(r.out.find("index,weight\n0,"), std::string::npos);
}

TEST(Spectrum, MissingModelAndUnknownFlag) {
  EXPECT_EQ(run({"spectrum", "--delta", "2"}).code, 2);
  EXPECT_EQ(run({"spectrum", "--model", "heisenberg", "--delta", "2", "--bogus"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"spectrum", "--model", "heisenberg", "--delta", "0.5"}).code, 2);
}

TEST(Spectrum, LastRepeatedFlagWins) {
  const auto r = run({"spectrum", "--model", "heisenberg", "--delta", "2", "--modes", "4", "--modes", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out).at("M"), 5);
}

TEST(Flow, XXBlockSizes) {
  const auto r = run({"flow", "--model", "xx", "--L-grid", "8,16,32", "--modes", "8"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j.at("report").at("levels").at("fine_grained"), true);
  EXPECT_EQ(j.at("report").at("direction"), "DESCENDING_MAJORIZES");
}

TEST(Flow, XYLambdaAscending) {
  const auto r = run({"flow", "--model", "xy", "--gamma", "0.5", "--lambda-grid", "1.2,1.5,2.0",
                      "--direction", "ascending"});
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST(Flow, WrongDirectionIsViolation) {
  const auto r = run({"flow", "--model", "heisenberg", "--delta-grid", "1.5,2,4", "--direction", "descending"});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(json::parse(r.out).at("report").at("levels").at("global"), false);
}

TEST(Flow, CftIncreasingQIsRejected) {
  const auto r = run({"flow", "--model", "cft", "--spec", data("ising_like.json"), "--q-of-g",
                      data("qflow_increasing.csv")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("HypothesisViolated"), std::string::npos) << r.err;
}

TEST(Flow, CftDecreasingQHolds) {
  const auto r = run({"flow", "--model", "cft", "--spec", data("ising_like.json"), "--q-of-g",
                      data("qflow_decreasing.csv")});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto l = run({"flow", "--model", "cft", "--spec", data("ising_like.json"), "--L-grid", "2,16,256"});
  EXPECT_EQ(l.code, 0) << l.err;
}

TEST(Flow, GridMustBeUnique) {
  EXPECT_EQ(run({"flow", "--model", "heisenberg", "--delta-grid", "1.5,2", "--L-grid", "4,8"}).code, 2);
  EXPECT_EQ(run({"flow", "--model", "xy", "--lambda", "1.5", "--gamma", "0.5", "--lambda-grid", "1.2,2"}).code, 2);
  EXPECT_EQ(run({"flow", "--model", "xy", "--gamma", "0.5", "--lambda-grid", "0.9,1.2"}).code, 2);
}

TEST(Flow, CsvFileAndDeterminism) {
  const auto csv = scratch("flow.csv");
  const auto out1 = scratch("flow1.json");
  const auto out2 = scratch("flow2.json");
  std::vector<std::string> args{"flow", "--model", "heisenberg", "--delta-grid", "1.5,2,4", "--csv", csv.string()};
  auto a = args, b = args;
  a.insert(a.end(), {"--output", out1.string()});
  b.insert(b.end(), {"--output", out2.string()});
  ASSERT_EQ(run(a).code, 0);
  ASSERT_EQ(run(b).code, 0);
  EXPECT_EQ(slurp(out1), slurp(out2));
  const auto text = slurp(csv);
  EXPECT_EQ(text.rfind("param,entropy,largest,verdict\n1.5,", 0), 0u);
  EXPECT_NE(text.find(",HOLDS\n4,"), std::string::npos);
}

TEST(Flow, ConfigFileMirrorsFlags) {
  const auto r = run({"--config", data("heisenberg_flow.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out).at("flow").at("points").size(), 3u);
  // Explicit flags override the file.
  const auto o = run({"flow", "--config", data("heisenberg_flow.json"), "--delta-grid", "2,4"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(json::parse(o.out).at("flow").at("points").size(), 2u);
  EXPECT_EQ(run({"--config", data("missing.json")}).code, 2);
}

TEST(Ed, SizeOutOfRange) {
  const auto r = run({"ed", "--model", "xx", "--N", "20", "--block", "3"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("SizeOutOfRange"), std::string::npos) << r.err;
}

TEST(Ed, CompareFormulaSideBySide) {
  const auto r = run({"ed", "--model", "heisenberg", "--delta", "3", "--N", "10", "--block", "5", "--compare-formula"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "param,index,ed,formula");
  std::size_t rows = 0;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 32u);
}

TEST(Ed, XXBoundaryBlocksOscillate) {
  // A single boundary site is maximally mixed, so odd and even blocks
  // cannot form one tower.
  const auto r = run({"ed", "--model", "xx", "--N", "10", "--block-flow", "1..4"});
  EXPECT_EQ(r.code, 3);
  const auto even = run({"ed", "--model", "xx", "--N", "10", "--block-flow", "2,4"});
  EXPECT_EQ(even.code, 0) << even.err;
}

TEST(Ed, HeisenbergCouplingFlowFiniteSize) {
  // Eight sites are far shorter than the correlation length at these
  // couplings: the half-chain gains entanglement with Δ and the check fails.
  const auto r = run({"ed", "--model", "heisenberg", "--N", "8", "--block", "4", "--delta-grid", "1.5,2,4"});
  EXPECT_EQ(r.code, 3) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_LE(j.at("duality_error").get<double>(), 1e-10);
  const auto largest = j.at("report").at("largest").get<std::vector<double>>();
  EXPECT_GT(largest[0], largest[1]);
  EXPECT_GT(largest[1], largest[2]);
}

TEST(Ed, CacheDirectory) {
  const auto dir = scratch("cache");
  fs::remove_all(dir);
  std::vector<std::string> args{"ed", "--model", "heisenberg", "--delta", "2", "--N", "8", "--cache-dir", dir.string()};
  const auto a = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_FALSE(fs::is_empty(dir));
  const auto b = run(args);
  EXPECT_EQ(a.out, b.out);
  fs::remove_all(dir);
}

TEST(Verify, SuitesPassAndSeedFromEnvironment) {
  const auto r = run({"verify", "--suite", "all", "--count", "20", "--seed", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out).at("seed"), 5);
  ::setenv("MAJOLAB_SEED", "99", 1);
  const auto e = run({"verify", "--suite", "appendix", "--count", "10", "--seed", "5"});
  ::unsetenv("MAJOLAB_SEED");
  ASSERT_EQ(e.code, 0) << e.err;
  EXPECT_EQ(json::parse(e.out).at("seed"), 99);
  EXPECT_EQ(run({"verify", "--suite", "nope"}).code, 2);
}
