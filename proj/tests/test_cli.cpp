#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "shadowlab/cli.hpp"
#include "shadowlab/io.hpp"

using shadowlab::cli::run;
using Json = nlohmann::json;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("shadowlab-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name, std::ios::binary) << text;
  }
  static Json results(const shadowlab::cli::Outcome& o) { return Json::parse(o.report)["results"]; }
  std::filesystem::path dir_;
};

}  // namespace

TEST_F(CliTest, ConstructThenBound) {
  const auto c = run({"construct", "--family", "turan", "--n", "6", "--l", "3", "--r", "3", "--out", path("t.hg")});
  ASSERT_EQ(c.exit_code, 0) << c.diagnostics;
  EXPECT_EQ(shadowlab::read_edge_list(path("t.hg")).size(), 8u);
  const auto b = run({"bound", "--input", path("t.hg"), "--family", "cancellative"});
  ASSERT_EQ(b.exit_code, 0) << b.diagnostics;
  const auto rep = results(b)[0]["report"];
  EXPECT_NEAR(rep["slack"].get<double>(), 0.0, 1e-9);
  EXPECT_TRUE(rep["tight"].get<bool>());
  const auto j = Json::parse(b.report);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["command"], "bound");
  EXPECT_EQ(j["input_digest"], shadowlab::sha256_hex(shadowlab::read_file(path("t.hg"))));
  EXPECT_TRUE(j.contains("runtime_ms"));
}

TEST_F(CliTest, CheckExitCodes) {
  run({"construct", "--family", "turan", "--n", "6", "--l", "3", "--r", "3", "--out", path("t.hg")});
  const auto a = run({"check", "--input", path("t.hg"), "--family", "expansion", "--l", "3"});
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_TRUE(results(a)[0]["free"].get<bool>());
  write("k4.hg", "3 4\n0 1 2\n0 1 3\n0 2 3\n1 2 3\n");
  const auto b = run({"check", "--input", path("k4.hg"), "--family", "cancellative"});
  EXPECT_EQ(b.exit_code, 1);
  EXPECT_EQ(results(b)[0]["witness"]["kind"], "cancellative_triple");
  const auto c = run({"bound", "--input", path("k4.hg"), "--family", "cancellative"});
  EXPECT_EQ(c.exit_code, 1);
  EXPECT_NE(c.diagnostics.find("cancellative"), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).exit_code, 2);
  EXPECT_EQ(run({"frobnicate"}).exit_code, 2);
  EXPECT_EQ(run({"check", "--bogus"}).exit_code, 2);
  EXPECT_EQ(run({"check", "--family", "cancellative"}).exit_code, 2);
  write("bad.hg", "3 4\n0 1 1\n");
  const auto p = run({"shadow", "--input", path("bad.hg")});
  EXPECT_EQ(p.exit_code, 2);
  EXPECT_NE(p.diagnostics.find("line 2"), std::string::npos);
  EXPECT_EQ(run({"enumerate", "--n", "5", "--family", "weird"}).exit_code, 2);
}

TEST_F(CliTest, BudgetExitCode) {
  const auto a = run({"enumerate", "--n", "6", "--r", "3", "--family", "none", "--budget", "100"});
  EXPECT_EQ(a.exit_code, 3);
  EXPECT_EQ(results(a)[0]["kind"], "budget");
  EXPECT_EQ(run({"enumerate", "--n", "10", "--r", "3"}).exit_code, 3);
}

TEST_F(CliTest, EnumerateVerifyBound) {
  const auto a = run({"enumerate", "--n", "5", "--r", "3", "--family", "expansion", "--l", "3", "--verify-bound",
                      "--csv", path("row.csv")});
  ASSERT_EQ(a.exit_code, 0) << a.diagnostics;
  const auto r = results(a)[0];
  EXPECT_EQ(r["max_edges"], 4);
  EXPECT_EQ(r["verify_bound"]["violations"], 0);
  std::ifstream csv(path("row.csv"));
  std::string header, row;
  std::getline(csv, header);
  std::getline(csv, row);
  EXPECT_EQ(header.rfind("n,r,family,engine,classes,max_edges", 0), 0u);
  EXPECT_EQ(row.rfind("5,3,expansion(3),naive,", 0), 0u);
}

TEST_F(CliTest, ExtremalAndCache) {
  const auto a = run({"extremal", "--n", "6", "--r", "3", "--family", "expansion", "--l", "3"});
  ASSERT_EQ(a.exit_code, 0) << a.diagnostics;
  const auto res = results(a)[0]["result"];
  EXPECT_EQ(res["max_edges"], 8);
  EXPECT_TRUE(res["unique"].get<bool>());
  const auto c1 = run({"enumerate", "--n", "5", "--r", "3", "--family", "cancellative", "--cache", path("cache")});
  const auto c2 = run({"enumerate", "--n", "5", "--r", "3", "--family", "cancellative", "--cache", path("cache")});
  EXPECT_FALSE(results(c1)[0]["cache_hit"].get<bool>());
  EXPECT_TRUE(results(c2)[0]["cache_hit"].get<bool>());
  EXPECT_EQ(results(c1)[0]["classes"], results(c2)[0]["classes"]);
}

TEST_F(CliTest, StabilityAndShadow) {
  run({"construct", "--family", "padded", "--n", "9", "--m", "6", "--l", "3", "--r", "3", "--out", path("p.hg")});
  const auto s = run({"stability", "--input", path("p.hg"), "--family", "cancellative", "--cap", "6"});
  ASSERT_EQ(s.exit_code, 0) << s.diagnostics;
  const auto r = results(s);
  EXPECT_EQ(r[0]["certificate"]["status"], "certified");
  EXPECT_EQ(r[1]["fit"]["removed"], 0);
  const auto sh = run({"shadow", "--input", path("p.hg"), "--l", "3"});
  ASSERT_EQ(sh.exit_code, 0) << sh.diagnostics;
  EXPECT_EQ(results(sh)[0]["shadow_size"], 12);
  EXPECT_EQ(results(sh)[0]["z"]["z"]["num"], 4);
  const auto l = run({"lemmas", "--input", path("p.hg"), "--family", "cancellative"});
  EXPECT_EQ(l.exit_code, 0);
  EXPECT_TRUE(results(l)[0]["all_hold"].get<bool>());
}

TEST_F(CliTest, DeterministicAndRevalidates) {
  run({"construct", "--family", "turan", "--n", "9", "--l", "3", "--r", "3", "--delete", "2", "--seed", "5",
       "--out", path("t.hg")});
  const std::vector<std::string> cmd{"stability", "--input", path("t.hg"), "--family", "cancellative",
                                     "--eps", "0.1", "--out", path("rep.json")};
  const auto a = run(cmd);
  ASSERT_EQ(a.exit_code, 0) << a.diagnostics;
  auto strip = [](const std::string& text) {
    auto j = Json::parse(text);
    j.erase("runtime_ms");
    return j.dump();
  };
  const auto first = shadowlab::read_file(path("rep.json"));
  run(cmd);
  EXPECT_EQ(strip(first), strip(shadowlab::read_file(path("rep.json"))));
  const auto v = run({"stability", "--input", path("t.hg"), "--family", "cancellative", "--eps", "0.1",
                      "--revalidate", path("rep.json")});
  EXPECT_EQ(v.exit_code, 0) << v.diagnostics;
  EXPECT_TRUE(Json::parse(v.report)["revalidation"]["match"].get<bool>());
  const auto w = run({"stability", "--input", path("t.hg"), "--family", "cancellative", "--eps", "0.2",
                      "--revalidate", path("rep.json")});
  EXPECT_EQ(w.exit_code, 1);
  EXPECT_FALSE(Json::parse(w.report)["revalidation"]["match"].get<bool>());
}
