// Copyright 2026 The edplab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "edplab/cli.hpp"

namespace {

namespace fs = std::filesystem;
using edplab::cli::Json;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("edplab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "edplab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    out_.str("");
    err_.str("");
    return edplab::cli::main(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  std::string out_flag() const { return "--out=" + dir_.string(); }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, ZeroSamplesIsAUsageErrorAndWritesNothing) {
  EXPECT_EQ(run({"fig2", "--samples=0", out_flag()}), edplab::cli::kExitUsage);
  EXPECT_FALSE(fs::exists(dir_ / "fig2.csv"));
  EXPECT_NE(err_.str().find("samples"), std::string::npos);
}

TEST_F(CliTest, ScalingNeedsThreeDimensions) {
  EXPECT_EQ(run({"scaling", "--d=16,64", out_flag()}), edplab::cli::kExitUsage);
  EXPECT_FALSE(fs::exists(dir_ / "scaling.csv"));
}

TEST_F(CliTest, RejectsUnknownInputs) {
  EXPECT_EQ(run({"verify", "--suite=nonsense", out_flag()}), edplab::cli::kExitUsage);
  EXPECT_EQ(run({"fig2", "--d=15", out_flag()}), edplab::cli::kExitUsage);
  EXPECT_EQ(run({"bounds", "--variant=WHAT", out_flag()}), edplab::cli::kExitUsage);
  EXPECT_EQ(run({"scaling", "--protocols=GUESS", out_flag()}), edplab::cli::kExitUsage);
  EXPECT_EQ(run({"fig2", "--format=xml", out_flag()}), edplab::cli::kExitUsage);
  EXPECT_EQ(run({}), edplab::cli::kExitUsage);
}

TEST_F(CliTest, Fig2CsvLayout) {
  ASSERT_EQ(run({"fig2", "--d=4,16", "--samples=2000", "--seed=3", out_flag()}), 0) << err_.str();
  const auto text = slurp(dir_ / "fig2.csv");
  EXPECT_EQ(text.find('\r'), std::string::npos);
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> meta;
  std::vector<std::string> body;
  while (std::getline(in, line)) (line.rfind("# ", 0) == 0 ? meta : body).push_back(line);
  ASSERT_GE(meta.size(), 5u);
  EXPECT_EQ(meta[0], "# command: fig2");
  EXPECT_EQ(meta[3], "# seed: 3");
  ASSERT_EQ(body.size(), 3u);
  EXPECT_EQ(body[0], "d_A,empirical,ci_lo,ci_hi,closed_form");
  EXPECT_EQ(body[1].rfind("2,", 0), 0u);
  EXPECT_EQ(body[2].rfind("4,", 0), 0u);
}

TEST_F(CliTest, BoundsJsonStructure) {
  ASSERT_EQ(run({"bounds", "--d=16", "--T=1..4", "--format=json", out_flag()}), 0);
  const auto doc = Json::parse(slurp(dir_ / "bounds.json"));
  EXPECT_EQ(doc["metadata"]["command"], "bounds");
  ASSERT_EQ(doc["rows"].size(), 4u);
  EXPECT_EQ(doc["rows"][0]["T"], 1);
  EXPECT_EQ(doc["rows"][0]["tv_upper"].get<double>(), 0.0);
  EXPECT_NEAR(doc["rows"][1]["tv_upper"].get<double>(), 2.0 - 16.0 / 17.0 - 16.0 / 25.0, 1e-12);
}

TEST_F(CliTest, ReRunsAreByteIdentical) {
  const std::vector<std::string> args{"fig2", "--d=4,16", "--samples=5000", "--seed=42",
                                      out_flag()};
  ASSERT_EQ(run(args), 0);
  const auto first = slurp(dir_ / "fig2.csv");
  ASSERT_EQ(run(args), 0);
  EXPECT_EQ(first, slurp(dir_ / "fig2.csv"));
  ASSERT_EQ(run({"fig2", "--d=4,16", "--samples=5000", "--seed=43", out_flag()}), 0);
  EXPECT_NE(first, slurp(dir_ / "fig2.csv"));
}

TEST_F(CliTest, WorkerCountDoesNotChangeOutput) {
  const std::vector<std::string> args{"fig2", "--d=4", "--samples=9000", "--seed=5", out_flag()};
  ::setenv("EDPLAB_THREADS", "1", 1);
  ASSERT_EQ(run(args), 0);
  const auto one = slurp(dir_ / "fig2.csv");
  ::setenv("EDPLAB_THREADS", "3", 1);
  ASSERT_EQ(run(args), 0);
  ::unsetenv("EDPLAB_THREADS");
  EXPECT_EQ(one, slurp(dir_ / "fig2.csv"));
}

TEST_F(CliTest, CommandLineOverridesConfig) {
  const auto cfg = dir_ / "run.cfg";
  {
    std::ofstream c(cfg);
    c << "# bounds settings\n"
      << "d = 64\n"
      << "--T=1..3\n"
      << "seed=9\n";
  }
  ASSERT_EQ(run({"bounds", "--config", cfg.string(), "--d=256", out_flag()}), 0) << err_.str();
  const auto text = slurp(dir_ / "bounds.csv");
  EXPECT_NE(text.find("# seed: 9"), std::string::npos);
  EXPECT_NE(text.find("\"d\":[256]"), std::string::npos);
  EXPECT_EQ(text.find("\"d\":[64]"), std::string::npos);
  EXPECT_NE(text.find("\"T\":[1,2,3]"), std::string::npos);
  EXPECT_EQ(run({"bounds", "--config", (dir_ / "missing.cfg").string()}), edplab::cli::kExitUsage);
}

TEST_F(CliTest, VerifySwapMomentsPasses) {
  ASSERT_EQ(run({"verify", "--suite=swap-moments", "--d=4", "--samples=20000", out_flag()}), 0)
      << err_.str();
  const auto text = slurp(dir_ / "verify.csv");
  EXPECT_NE(text.find("swap-moments,d=4:mean"), std::string::npos);
  EXPECT_EQ(text.find(",false"), std::string::npos);
}

TEST_F(CliTest, SmallScalingRunProducesPointsAndFit) {
  ASSERT_EQ(run({"scaling", "--protocols=SWAP_TEST", "--d=64,256,1024", "--trials=400",
                 "--soundness=5/6", out_flag()}),
            0)
      << err_.str();
  const auto text = slurp(dir_ / "scaling.csv");
  EXPECT_NE(text.find("point,SWAP_TEST,64,true"), std::string::npos);
  EXPECT_NE(text.find("fit,SWAP_TEST"), std::string::npos);
}

TEST(CliParsing, RatiosAndLists) {
  EXPECT_DOUBLE_EQ(edplab::cli::parse_ratio("5/6", "x"), 5.0 / 6.0);
  EXPECT_DOUBLE_EQ(edplab::cli::parse_ratio("0.25", "x"), 0.25);
  EXPECT_THROW(edplab::cli::parse_ratio("1/0", "x"), edplab::cli::UsageError);
  EXPECT_EQ(edplab::cli::parse_u64_list("1..3,8", "x"), (std::vector<std::uint64_t>{1, 2, 3, 8}));
  EXPECT_EQ(edplab::cli::parse_u64_list("2:4", "x"), (std::vector<std::uint64_t>{2, 3, 4}));
  EXPECT_THROW(edplab::cli::parse_u64_list("4..2", "x"), edplab::cli::UsageError);
  EXPECT_THROW(edplab::cli::parse_u64_list("a", "x"), edplab::cli::UsageError);
  EXPECT_EQ(edplab::cli::parse_suites("all").size(), 4u);
  EXPECT_EQ(edplab::cli::csv_cell(Json("a,b")), "\"a,b\"");
  EXPECT_EQ(edplab::cli::format_double(0.1), "0.1");
}

}  // namespace
