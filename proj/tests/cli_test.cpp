// Copyright 2026 The dcrhlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dcrhlab/cli/cli.hpp"
#include "dcrhlab/common/csv.hpp"
#include "dcrhlab/common/error.hpp"

namespace dcrhlab::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "dcrhlab");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream f(p);
  std::vector<std::vector<std::string>> rows;
  for (std::string line; std::getline(f, line);) rows.push_back(split_csv_line(line));
  return rows;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("dcrhlab_cli_" + std::string(
        ::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
};

TEST(ParseRange, AcceptsPairsAndSingles) {
  EXPECT_EQ(parse_range("3..8").lo, 3);
  EXPECT_EQ(parse_range("3..8").hi, 8);
  EXPECT_EQ(parse_range("5").lo, 5);
  EXPECT_EQ(parse_range("5").hi, 5);
  EXPECT_THROW(parse_range("3..x"), ConfigError);
  EXPECT_THROW(parse_range(""), ConfigError);
  EXPECT_THROW(parse_range("2.5"), ConfigError);
}

TEST_F(CliTest, NoSubcommandPrintsUsage) {
  const auto r = invoke({});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("Usage"), std::string::npos);
  EXPECT_NE(r.out.find("verify-all"), std::string::npos);
}

TEST_F(CliTest, MalformedArgumentsExitTwo) {
  EXPECT_EQ(invoke({"gap-sweep", "--n", "3..x"}).code, 2);
  EXPECT_EQ(invoke({"gap-sweep", "--n", "5..3"}).code, 2);
  EXPECT_EQ(invoke({"gap-sweep", "--mode", "guess"}).code, 2);
  EXPECT_EQ(invoke({"gap-sweep", "--bogus"}).code, 2);
  const auto cap = invoke({"gap-sweep", "--n", "30", "--out", (dir_ / "x.csv").string()});
  EXPECT_EQ(cap.code, 2);
  EXPECT_NE(cap.err.find("cap"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir_ / "x.csv"));
}

TEST_F(CliTest, GapSweepRowsSatisfyBounds) {
  const fs::path out = dir_ / "gap.csv";
  const auto r = invoke({"gap-sweep", "--n", "2..4", "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = read_csv(out);
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(rows[0][0], "family");
  EXPECT_EQ(rows.size(), 1u + 5 * 5 * 3);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i][9], "1");
    EXPECT_LE(std::stod(rows[i][6]), std::stod(rows[i][7]) + 1e-6);
    EXPECT_LE(std::stod(rows[i][7]), std::stod(rows[i][8]) + 1e-6);
  }
}

TEST_F(CliTest, RowsAreSortedNumericallyOnN) {
  const fs::path out = dir_ / "gap.csv";
  ASSERT_EQ(invoke({"gap-sweep", "--n", "8..10", "--family", "identity", "--generator", "ideal", "--out",
                    out.string()}).code,
            0);
  const auto rows = read_csv(out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[1][2], "8");
  EXPECT_EQ(rows[2][2], "9");
  EXPECT_EQ(rows[3][2], "10");
}

TEST_F(CliTest, InjectedFaultFailsTheSweep) {
  const fs::path out = dir_ / "gap.csv";
  const auto r = invoke({"gap-sweep", "--n", "2", "--family", "affine", "--inject-fault", "--out", out.string()});
  EXPECT_EQ(r.code, 1);
  bool saw_liar = false;
  for (const auto& row : read_csv(out)) {
    if (row[1] == "liar") {
      saw_liar = true;
      EXPECT_EQ(row[9], "0");
      EXPECT_FALSE(row[10].empty());
    }
  }
  EXPECT_TRUE(saw_liar);
}

TEST_F(CliTest, SameSeedSameBytes) {
  for (const char* cmd : {"entropy", "dcrh-game", "commit-reduce"}) {
    const fs::path a = dir_ / "a.csv";
    const fs::path b = dir_ / "b.csv";
    ASSERT_EQ(invoke({cmd, "--seed", "11", "--n", "2..3", "--samples", "20", "--out", a.string()}).code, 0) << cmd;
    ASSERT_EQ(invoke({cmd, "--seed", "11", "--n", "2..3", "--samples", "20", "--out", b.string()}).code, 0) << cmd;
    EXPECT_EQ(slurp(a), slurp(b)) << cmd;
    EXPECT_FALSE(slurp(a).empty());
  }
}

TEST_F(CliTest, MonteCarloGameReportsInterval) {
  const fs::path out = dir_ / "mc.csv";
  ASSERT_EQ(invoke({"dcrh-game", "--n", "3", "--family", "uniform", "--mode", "monte-carlo", "--samples", "500",
                    "--out", out.string()}).code,
            0);
  const auto rows = read_csv(out);
  ASSERT_GT(rows.size(), 1u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i][3], "monte-carlo");
    EXPECT_GT(std::stod(rows[i][6]), 0);
  }
}

TEST_F(CliTest, ConfigFileOverridesDefaults) {
  const fs::path cfg = dir_ / "run.ini";
  std::ofstream(cfg) << "n=3..4\nfamily=parity\ngenerator=honest\n";
  const fs::path out = dir_ / "gap.csv";
  ASSERT_EQ(invoke({"gap-sweep", "--config", cfg.string(), "--out", out.string()}).code, 0);
  const auto rows = read_csv(out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1][0], "parity");
  EXPECT_EQ(rows[1][1], "honest");
}

TEST_F(CliTest, OutputDirectoryFromEnvironment) {
  ::setenv("DCRHLAB_OUT_DIR", dir_.c_str(), 1);
  const auto r = invoke({"commit-reduce", "--samples", "4"});
  ::unsetenv("DCRHLAB_OUT_DIR");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = read_csv(dir_ / "commit-reduce.csv");
  ASSERT_EQ(rows.size(), 5u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(rows[i].back(), "1");
}

TEST_F(CliTest, CommitmentSchemeSelector) {
  const fs::path out = dir_ / "c.csv";
  EXPECT_EQ(invoke({"commit-reduce", "--scheme", "plaintext", "--l", "1", "--k", "3", "--m", "1", "--samples", "2",
                    "--out", out.string()}).code,
            0);
  EXPECT_EQ(invoke({"commit-reduce", "--scheme", "nonsense", "--out", out.string()}).code, 2);
}

TEST_F(CliTest, SzkProtocolTables) {
  const fs::path out = dir_ / "szk.csv";
  ASSERT_EQ(invoke({"szk-protocol", "--n", "1", "--out", out.string()}).code, 0);
  const auto rows = read_csv(out);
  bool hybrid = false;
  for (const auto& row : rows) {
    if (row[1] == "hybrid" && row[2] == "ok") {
      hybrid = true;
      EXPECT_EQ(row[3], "1");
    }
  }
  EXPECT_TRUE(hybrid);
  EXPECT_EQ(invoke({"szk-protocol", "--n", "4", "--out", out.string()}).code, 2);
}

}  // namespace
}  // namespace dcrhlab::cli
