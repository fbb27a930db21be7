// Copyright 2026 The vlnaug Authors
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

#include <sys/wait.h>

#include <cstdlib>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "vlnaug/error.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

int run(const std::string& args, const fs::path& stdout_file = "/dev/null") {
  const std::string cmd = std::string(VLNAUG_CLI_PATH) + " " + args + " > '" + stdout_file.string() +
                          "' 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    ASSERT_EQ(run("toy --out '" + dir.path().string() + "' -q"), vlnaug::kExitOk);
  }
  std::string config() const { return "--config '" + (dir.path() / "config.json").string() + "'"; }
  testutil::TempDir dir{"vlnaug-cli"};
};

TEST_F(Cli, ToyThenRunSucceeds) {
  EXPECT_EQ(run("run " + config() + " -q"), vlnaug::kExitOk);
  const auto root = dir.path() / "run";
  EXPECT_TRUE(fs::exists(root / "augment.jsonl"));
  EXPECT_TRUE(fs::exists(root / "stage1.jsonl"));
  EXPECT_TRUE(fs::exists(root / "stage2.jsonl"));

  const auto out = dir.path() / "report.json";
  EXPECT_EQ(run("report --json --root '" + root.string() + "'", out), vlnaug::kExitOk);
  const auto summary = json::parse(testutil::read_file(out));
  EXPECT_EQ(summary["counts"]["augmented"], 15);
}

TEST_F(Cli, AugmentAloneSkipsManifests) {
  EXPECT_EQ(run("augment " + config() + " --workers 2 -q"), vlnaug::kExitOk);
  EXPECT_TRUE(fs::exists(dir.path() / "run" / "augment.jsonl"));
  EXPECT_FALSE(fs::exists(dir.path() / "run" / "stage1.jsonl"));
  EXPECT_EQ(run("cropmix " + config() + " -q"), vlnaug::kExitOk);
  EXPECT_EQ(run("schedule " + config() + " -q"), vlnaug::kExitOk);
  EXPECT_TRUE(fs::exists(dir.path() / "run" / "stage1.jsonl"));
}

TEST_F(Cli, IngestSummarizesDataset) {
  const auto out = dir.path() / "ingest.out";
  EXPECT_EQ(run("ingest " + config(), out), vlnaug::kExitOk);
  const auto summary = json::parse(testutil::read_file(out));
  EXPECT_EQ(summary["pairs"], 5);
  EXPECT_EQ(summary["instructions"], 15);
}

TEST_F(Cli, ConfigErrorsExitTwo) {
  testutil::write_file(dir.path() / "bad.json", R"({"seed": 1, "bogus": true})");
  EXPECT_EQ(run("run --config '" + (dir.path() / "bad.json").string() + "'"), vlnaug::kExitConfig);
  EXPECT_EQ(run("run --config '" + (dir.path() / "missing.json").string() + "'"), vlnaug::kExitConfig);
  EXPECT_EQ(run("run"), vlnaug::kExitConfig);
  EXPECT_EQ(run("frobnicate"), vlnaug::kExitConfig);
}

TEST_F(Cli, ReportOnMissingRunExitsFour) {
  EXPECT_EQ(run("report --root '" + (dir.path() / "nothing").string() + "'"), vlnaug::kExitValidation);
}

TEST_F(Cli, EvalComputesMeans) {
  // Toy scans are grids; read two adjacent viewpoints from the toy dataset.
  const auto conn = dir.path() / "data" / "connectivity";
  std::string scan_file;
  for (const auto& e : fs::directory_iterator(conn)) scan_file = e.path().filename().string();
  ASSERT_FALSE(scan_file.empty());
  const auto nodes = json::parse(testutil::read_file(conn / scan_file));
  const std::string scan = scan_file.substr(0, scan_file.rfind("_connectivity"));
  std::string a, b;
  for (std::size_t j = 0; j < nodes[0]["unobstructed"].size() && b.empty(); ++j)
    if (nodes[0]["unobstructed"][j].get<bool>()) b = nodes[j]["image_id"];
  a = nodes[0]["image_id"];
  ASSERT_FALSE(b.empty());

  const auto episodes = dir.path() / "episodes.jsonl";
  testutil::write_file(episodes, json{{"scan", scan}, {"predicted", {a, b}}, {"gt", {a, b}}}.dump() + "\n" +
                                     json{{"scan", scan}, {"predicted", {a}}, {"gt", {a}}}.dump() + "\n");
  const auto out = dir.path() / "metrics.json";
  EXPECT_EQ(run("eval --dataset '" + (dir.path() / "data").string() + "' --episodes '" +
                episodes.string() + "' --out '" + out.string() + "'"),
            vlnaug::kExitOk);
  const auto result = json::parse(testutil::read_file(out));
  EXPECT_EQ(result["episodes"], 2);
  EXPECT_DOUBLE_EQ(result["mean"]["SR"].get<double>(), 1.0);
  EXPECT_DOUBLE_EQ(result["mean"]["SPL"].get<double>(), 1.0);
}

}  // namespace
