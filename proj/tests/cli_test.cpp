// Copyright 2026 The opminer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "opminer/evalharness.hpp"
#include "opminer/simgen.hpp"
#include "support/fixtures.hpp"

namespace opminer {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("opminer_cli_test_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    unsetenv("OPMINER_TIME_BUDGET_S");
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, DiffOfIdenticalFiles) {
  testing::running_example_old().save(path("a.json"));
  const CliRun r = run({"diff", path("a.json"), path("a.json")});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("components: 0"), std::string::npos) << r.err;
}

TEST_F(CliTest, DiffRunningExample) {
  testing::running_example_old().save(path("a.json"));
  testing::running_example_new().save(path("b.json"));
  const CliRun r = run({"diff", path("a.json"), path("b.json"), "-o", path("d.lg")});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("components: 1\n"), std::string::npos);
  EXPECT_NE(r.out.find("changed elements: 11\n"), std::string::npos);
  EXPECT_NE(r.out.find("boundary nodes: 3\n"), std::string::npos);
  EXPECT_EQ(slurp(path("d.lg")).rfind("t # 0_0\n", 0), 0u);
}

TEST_F(CliTest, MalformedInputIsExit2WithLine) {
  spit(path("bad.lg"), "t # 0\nv 0 A\nv x B\n");
  const CliRun r = run({"mine", path("bad.lg"), "--threshold", "1"});
  EXPECT_EQ(r.code, cli::kInputError);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
  const CliRun missing = run({"diff", path("nope.json"), path("nope.json")});
  EXPECT_EQ(missing.code, cli::kInputError);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kInputError);
  EXPECT_EQ(run({"mine", path("bad.lg"), "--by", "size"}).code, cli::kInputError);
}

TEST_F(CliTest, HelpIsOk) { EXPECT_EQ(run({"--help"}).code, cli::kOk); }

TEST_F(CliTest, MineEmptyInput) {
  spit(path("empty.lg"), "");
  const CliRun r = run({"mine", path("empty.lg"), "-o", path("p.json")});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("patterns: 0"), std::string::npos);
}

std::string five_transactions() {
  std::string text;
  for (int i = 0; i < 5; ++i) {
    text += "t # " + std::to_string(i) + "_0\nv 0 A\nv 1 B\ne 0 1 x\n";
  }
  return text;
}

TEST_F(CliTest, RelativeThresholdEchoed) {
  spit(path("db.lg"), five_transactions());
  const CliRun r = run({"mine", path("db.lg"), "--threshold", "0.4", "--relative", "-o",
                     path("p.json")});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("threshold: 2 (relative)"), std::string::npos) << r.out;
  const std::string doc = slurp(path("p.json"));
  EXPECT_NE(doc.find("\"ratio\": 0.4"), std::string::npos) << doc.substr(0, 200);
  EXPECT_EQ(run({"mine", path("db.lg"), "--threshold", "1.5"}).code, cli::kInputError);
  EXPECT_EQ(run({"mine", path("db.lg"), "--relative"}).code, cli::kInputError);
}

TEST_F(CliTest, RulesSkipBadEntries) {
  std::string text = five_transactions();
  spit(path("db.lg"), text);
  ASSERT_EQ(run({"mine", path("db.lg"), "--threshold", "2", "-o", path("p.json")}).code,
            cli::kOk);
  // Plain labels have no change prefix: every entry fails.
  const CliRun bad = run({"rules", path("p.json"), "-o", path("rules")});
  EXPECT_EQ(bad.code, cli::kPartialFailure);
  EXPECT_NE(bad.out.find("rules failed: 1"), std::string::npos) << bad.out;

  std::string mixed;
  for (int i = 0; i < 3; ++i) {
    mixed += "t # " + std::to_string(i) +
             "_0\nv 0 preserved_Package\nv 1 create_Requirement\ne 0 1 create_requirements\n";
    mixed += "t # " + std::to_string(i) + "_1\nv 0 Odd\nv 1 Thing\ne 0 1 x\n";
  }
  spit(path("mixed.lg"), mixed);
  ASSERT_EQ(run({"mine", path("mixed.lg"), "--threshold", "3", "-o", path("q.json")}).code,
            cli::kOk);
  const CliRun r = run({"rules", path("q.json"), "-o", path("rules2"), "--dot"});
  EXPECT_EQ(r.code, cli::kPartialFailure);
  EXPECT_NE(r.out.find("rules written: 1"), std::string::npos) << r.out;
  EXPECT_TRUE(fs::exists(path("rules2/rule_001.json")) ||
              fs::exists(path("rules2/rule_002.json")));
}

TEST_F(CliTest, TinyBudgetIsExit3) {
  std::string text;
  for (int i = 0; i < 6; ++i) {
    text += "t # " + std::to_string(i) + "_0\n";
    for (int n = 0; n < 8; ++n) text += "v " + std::to_string(n) + " A\n";
    for (int n = 0; n + 1 < 8; ++n) {
      text += "e " + std::to_string(n) + " " + std::to_string(n + 1) + " x\n";
      text += "e " + std::to_string(n + 1) + " " + std::to_string(n) + " y\n";
    }
  }
  spit(path("big.lg"), text);
  setenv("OPMINER_TIME_BUDGET_S", "0.000001", 1);
  const CliRun r = run({"mine", path("big.lg"), "--threshold", "1", "-o", path("p.json")});
  unsetenv("OPMINER_TIME_BUDGET_S");
  EXPECT_EQ(r.code, cli::kBudgetExceeded) << r.err;
  EXPECT_TRUE(fs::exists(path("p.json")));
  setenv("OPMINER_TIME_BUDGET_S", "soon", 1);
  EXPECT_EQ(run({"mine", path("big.lg"), "--threshold", "1"}).code, cli::kInputError);
  unsetenv("OPMINER_TIME_BUDGET_S");
}

// simulate -> diff --repo -> mine --auto -> eval --ranked matches the
// library pipeline, and every output is reproducible byte for byte.
TEST_F(CliTest, EndToEndChain) {
  auto chain = [&](const std::string& tag) {
    const std::string repo = path("repo" + tag);
    EXPECT_EQ(run({"simulate", "--d", "4", "--e", "3", "--p", "0.2", "--seed", "7",
                   "--experiment", "2", "-o", repo})
                  .code,
              cli::kOk);
    EXPECT_EQ(run({"diff", "--repo", repo, "-o", path("d" + tag + ".lg")}).code, cli::kOk);
    EXPECT_EQ(run({"mine", path("d" + tag + ".lg"), "--auto", "-o", path("p" + tag + ".json")})
                  .code,
              cli::kOk);
    const CliRun ev = run({"eval", "--ranked", path("p" + tag + ".json"), "--truth",
                        repo + "/truth/truth_1.lg", repo + "/truth/truth_2.lg", "--k", "1",
                        "2", "inf"});
    EXPECT_EQ(ev.code, cli::kOk) << ev.err;
    return ev.out;
  };
  const std::string a = chain("a");
  const std::string b = chain("b");
  EXPECT_EQ(a, b);
  EXPECT_EQ(slurp(path("da.lg")), slurp(path("db.lg")));
  EXPECT_EQ(slurp(path("pa.json")), slurp(path("pb.json")));
  EXPECT_EQ(slurp(path("repoa/log.json")), slurp(path("repob/log.json")));
  EXPECT_EQ(slurp(path("repoa/m4.json")), slurp(path("repob/m4.json")));

  const RepoBundle bundle = load_bundle(path("repoa"));
  PipelineOptions options;
  const auto rows = evaluate_bundle(bundle, options, 2);
  const ReportRow* row = nullptr;
  for (const auto& r : rows) {
    if (r.mode == RankMode::kCompression) row = &r;
  }
  ASSERT_NE(row, nullptr);
  ASSERT_EQ(row->truth_ranks.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    const std::string expected =
        "rank_truth_" + std::to_string(i + 1) + ": " +
        (row->truth_ranks[i] ? std::to_string(*row->truth_ranks[i]) : std::string("NA"));
    EXPECT_NE(a.find(expected), std::string::npos) << a;
  }
}

TEST_F(CliTest, EvalGridAndReport) {
  spit(path("grid.json"),
       R"({"d": [2], "e": [1], "p": [0.0], "seeds": 2, "experiment": 1})");
  const CliRun r = run({"eval", "--grid", path("grid.json"), "-o", path("out"), "-q"});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_TRUE(fs::exists(path("out/report.csv")));
  EXPECT_TRUE(fs::exists(path("out/grid.json")));
  const CliRun rep = run({"report", "--in", path("out")});
  EXPECT_EQ(rep.code, cli::kOk) << rep.err;
  EXPECT_NE(rep.out.find("compression"), std::string::npos) << rep.out;
}

TEST_F(CliTest, RankTop) {
  spit(path("db.lg"), five_transactions());
  ASSERT_EQ(run({"mine", path("db.lg"), "--threshold", "2", "-o", path("p.json")}).code,
            cli::kOk);
  const CliRun r = run({"rank", path("p.json"), "--by", "frequency", "--top", "1", "-o",
                     path("r.json")});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("ranked: 1 (frequency)"), std::string::npos) << r.out;
}

}  // namespace
}  // namespace opminer
