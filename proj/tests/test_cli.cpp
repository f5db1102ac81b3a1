#include "cli.hpp"

#include "locsym/io.hpp"
#include "oracles.hpp"

#include <json.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using locsym::cli::run;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("locsym_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto p = (dir_ / name).string();
    std::ofstream(p) << text;
    return p;
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

TEST(Cli, UsageErrors) {
  EXPECT_EQ(call({"frobnicate"}).code, 2);
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"der", "basis", "--format", "xml"}).code, 2);
  EXPECT_EQ(call({"der", "check", "--algebra", "pi2"}).code, 2);  // no --matrix
  EXPECT_EQ(call({"der", "basis", "--algebra", "/nonexistent.json"}).code, 2);
  EXPECT_EQ(call({"--help"}).code, 0);
}

TEST(Cli, LocderBasisStructured) {
  const auto r = call({"locder", "basis", "--algebra", "pi3", "--format", "structured"});
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("schema_version"), 1);
  EXPECT_EQ(j.at("command"), "locder basis");
  EXPECT_EQ(j.at("result").at("basis").size(), 7u);
  const auto d = call({"der", "basis", "--algebra", "pi2", "--format", "structured"});
  EXPECT_EQ(json::parse(d.out).at("result").at("basis").size(), 7u);
}

TEST(Cli, UnsupportedAlgebra) {
  EXPECT_EQ(call({"report", "geometry", "--algebra", "zero3"}).code, 3);
  EXPECT_EQ(call({"locaut", "verify", "--algebra", "zero3"}).code, 3);
  const auto r = call({"report", "geometry", "--algebra", "zero3", "--format", "structured"});
  EXPECT_TRUE(json::parse(r.out).contains("error"));
}

TEST(Cli, Geometry) {
  const auto r = call({"report", "geometry", "--algebra", "pi2", "--format", "structured"});
  ASSERT_EQ(r.code, 0);
  const json g = json::parse(r.out).at("result");
  EXPECT_EQ(g.at("dimension"), 11);
  EXPECT_EQ(g.at("lie_group"), true);
}

TEST_F(CliFiles, LocautWitnessAndVerify) {
  const auto m = write("m.json", locsym::operator_to_json(oracle::diag({1, 2, 1, 1, 1})));
  const auto rep = path("rep.json");
  const auto r = call({"locaut", "witness", "--algebra", "pi3", "--matrix", m, "--format", "structured", "--out", rep});
  ASSERT_EQ(r.code, 1);
  const json j = json::parse(locsym::read_file(rep));
  EXPECT_EQ(j.at("result").at("witness"), (json{"0", "1", "0", "1", "0"}));
  EXPECT_EQ(j.at("counterexample").at("kind"), "locaut_point");
  EXPECT_EQ(call({"--verify-counterexample", rep}).code, 0);

  // a tampered point is no longer a refutation
  json bad = j;
  bad["counterexample"]["point"] = json{"1", "0", "0", "0", "0"};
  const auto tampered = write("bad.json", bad.dump());
  EXPECT_EQ(call({"--verify-counterexample", tampered}).code, 1);
  EXPECT_EQ(call({"--verify-counterexample", write("junk.json", "{}")}).code, 2);
}

TEST_F(CliFiles, MemberChecks) {
  const auto id = write("id.json", locsym::operator_to_json(locsym::QMatrix::identity(5)));
  EXPECT_EQ(call({"aut", "check", "--algebra", "pi2", "--matrix", id}).code, 0);
  EXPECT_EQ(call({"der", "check", "--algebra", "pi2", "--matrix", id}).code, 1);
  const auto minus = write("minus.json", locsym::operator_to_json(oracle::diag({1, 1, -1, 1, 1})));
  EXPECT_EQ(call({"locaut", "check", "--algebra", "pi3", "--matrix", minus}).code, 0);
  EXPECT_EQ(call({"aut", "check", "--algebra", "pi3", "--matrix", minus}).code, 1);
  const auto w = write("w.json", locsym::operator_to_json(locsym::QMatrix::unit(5, 2, 1)));
  EXPECT_EQ(call({"locder", "check", "--algebra", "pi3", "--matrix", w}).code, 0);
  const auto bad = write("bad.json", R"({"dim": 5, "entries": [["1"]]})");
  EXPECT_EQ(call({"aut", "check", "--algebra", "pi2", "--matrix", bad}).code, 2);
}

TEST_F(CliFiles, CounterexamplesRoundTrip) {
  const auto e12 = write("e.json", locsym::operator_to_json(locsym::QMatrix::identity(5)));
  const auto rep = path("rep.json");
  ASSERT_EQ(call({"der", "check", "--algebra", "pi2", "--matrix", e12, "--format", "structured", "--out", rep}).code, 1);
  EXPECT_EQ(json::parse(locsym::read_file(rep)).at("counterexample").at("kind"), "leibniz_pair");
  EXPECT_EQ(call({"--verify-counterexample", rep}).code, 0);
}

TEST_F(CliFiles, ExpAndLog) {
  const auto z = write("z.json", locsym::operator_to_json(locsym::QMatrix(5, 5)));
  const auto r = call({"exp", "--matrix", z, "--format", "structured"});
  ASSERT_EQ(r.code, 0);
  const auto l = call({"log", "--matrix", z});
  EXPECT_EQ(l.code, 3);  // singular
}

TEST(Cli, BridgeAndInfer) {
  EXPECT_EQ(call({"bridge", "--algebra", "pi3", "--direction", "exp", "--trials", "20"}).code, 0);
  EXPECT_EQ(call({"bridge", "--algebra", "pi3", "--direction", "log", "--trials", "20"}).code, 0);
  EXPECT_EQ(call({"infer", "--algebra", "pi2"}).code, 0);
  EXPECT_EQ(call({"bridge", "--algebra", "pi3", "--direction", "sideways"}).code, 2);
}

TEST(Cli, SuiteIsDeterministic) {
  const auto a = call({"suite", "--seed", "5"});
  const auto b = call({"suite", "--seed", "5"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("all criteria passed"), std::string::npos);
}

}  // namespace
