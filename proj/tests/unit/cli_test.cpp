// Copyright 2026 The trajbench Authors
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

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "trajbench/cli.hpp"
#include "trajbench/io.hpp"

namespace trajbench {
namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code;
  std::string out, err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("trajbench_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string p(const std::string& name) const { return (dir_ / name).string(); }

  void synth(const std::string& kind = "straight", int n = 12) {
    const auto r = run({"synth", "--kind", kind, "--n", std::to_string(n), "--seed", "3", "--out", dir_.string()});
    ASSERT_EQ(r.code, 0) << r.err;
  }

  void tag() {
    const auto r = run({"tag", "--scenarios", p("scenarios.json"), "--maps", p("map.json"), "--predictions",
                        p("predictions_const_vel.json"), p("predictions_lane_fan.json"),
                        p("predictions_noisy.json"), "--out", p("tags.json")});
    ASSERT_EQ(r.code, 0) << r.err;
  }

  CliResult eval(const std::string& model, const std::string& tags = "tags.json") {
    return run({"eval", "--scenarios", p("scenarios.json"), "--maps", p("map.json"), "--predictions",
                p("predictions_" + model + ".json"), "--tags", p(tags), "--out", p("metrics_" + model + ".json")});
  }

  fs::path dir_;
};

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"synth"}).code, kExitUsage);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
  EXPECT_EQ(run({"synth", "--kind", "spiral", "--out", p("x")}).code, kExitUsage);
  EXPECT_EQ(run({"synth", "--k", "1", "--out", p("x")}).code, kExitUsage);
}

TEST_F(CliTest, FullPipelineProducesDeclaredFiles) {
  synth("t_intersection");
  for (const char* f : {"map.json", "scenarios.json", "predictions_const_vel.json", "predictions_lane_fan.json",
                        "predictions_noisy.json"}) {
    EXPECT_TRUE(fs::exists(p(f))) << f;
  }
  tag();
  for (const char* m : {"const_vel", "lane_fan", "noisy"}) ASSERT_EQ(eval(m).code, 0);
  const auto r = run({"report", "--metrics", p("metrics_const_vel.json"), p("metrics_lane_fan.json"),
                      p("metrics_noisy.json"), "--out", p("report"), "--balance", "amv", "--category", "turn/*/*"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* f : {"report.json", "report.csv", "report.md", "balance.csv", "balance.svg"}) {
    EXPECT_TRUE(fs::exists(dir_ / "report" / f)) << f;
  }
  const auto rep = io::read_json(dir_ / "report" / "report.json");
  EXPECT_EQ(rep["reports"].size(), 3u);
  EXPECT_EQ(rep["inputs"].size(), 3u);
  EXPECT_TRUE(rep["configs"].contains("lane_fan"));
  EXPECT_EQ(rep["balance"]["category"], "TURN/*/*");

  const auto metrics = io::read_json(p("metrics_noisy.json"));
  EXPECT_TRUE(metrics.contains("config"));
  EXPECT_EQ(metrics["inputs"].size(), 4u);
}

TEST_F(CliTest, TagFromMinFdeTable) {
  synth();
  io::MinFdeFile table;
  table.models = {"x"};
  const auto recs = io::scenarios_from_json(io::read_json(p("scenarios.json")));
  for (std::size_t i = 0; i < recs.size(); ++i) table.table[recs[i].id] = {static_cast<double>(i)};
  io::write_atomic(p("minfde.json"), io::dump(io::minfde_to_json(table)));
  const auto r = run({"tag", "--scenarios", p("scenarios.json"), "--maps", p("map.json"), "--minfde",
                      p("minfde.json"), "--out", p("tags.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto tags = io::tags_from_json(io::read_json(p("tags.json")));
  EXPECT_EQ(tags.tags.at(recs.back().id).difficulty, Difficulty::kHard);
  EXPECT_EQ(run({"tag", "--scenarios", p("scenarios.json"), "--maps", p("map.json"), "--out", p("t.json")}).code,
            kExitUsage);
}

TEST_F(CliTest, EvalWithMissingTagExitsThree) {
  synth();
  tag();
  io::Json tags = io::read_json(p("tags.json"));
  tags["tags"].erase(tags["tags"].begin());
  io::write_atomic(p("tags_missing.json"), io::dump(tags));
  const auto r = eval("const_vel", "tags_missing.json");
  EXPECT_EQ(r.code, kExitDataConsistency) << r.err;
}

TEST_F(CliTest, SchemaProblemsExitTwo) {
  synth();
  tag();
  io::Json preds = io::read_json(p("predictions_lane_fan.json"));
  preds["predictions"][1]["modes"][0].erase(0);
  io::write_atomic(p("predictions_bad.json"), io::dump(preds));
  const auto r = eval("bad");
  EXPECT_EQ(r.code, kExitSchema);
  EXPECT_NE(r.err.find("$.predictions[1].modes"), std::string::npos) << r.err;
  EXPECT_EQ(eval("nonexistent").code, kExitSchema);
}

TEST_F(CliTest, UnknownScenarioInPredictionsExitsThree) {
  synth();
  tag();
  io::Json preds = io::read_json(p("predictions_const_vel.json"));
  preds["predictions"][0]["scenario_id"] = "ghost";
  io::write_atomic(p("predictions_ghost.json"), io::dump(preds));
  const auto r = eval("ghost");
  EXPECT_EQ(r.code, kExitDataConsistency);
  EXPECT_NE(r.err.find("ghost"), std::string::npos);
}

TEST_F(CliTest, SingleModelReportRanksAllOne) {
  synth();
  tag();
  ASSERT_EQ(eval("lane_fan").code, 0);
  ASSERT_EQ(run({"report", "--metrics", p("metrics_lane_fan.json"), "--out", p("rep")}).code, 0);
  const std::string md = io::read_text(dir_ / "rep" / "report.md");
  EXPECT_NE(md.find("(1)"), std::string::npos);
  for (const char* r : {"(2)", "(3)"}) EXPECT_EQ(md.find(r), std::string::npos) << r;
  const std::string csv = io::read_text(dir_ / "rep" / "report.csv");
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "model,category,metric,value,count,rank");
  while (std::getline(lines, line)) EXPECT_EQ(line.substr(line.rfind(',') + 1), "1") << line;
  EXPECT_EQ(run({"report", "--metrics", p("metrics_lane_fan.json"), p("metrics_lane_fan.json"), "--out", p("r2")}).code,
            kExitDataConsistency);
  EXPECT_EQ(run({"report", "--metrics", p("metrics_lane_fan.json"), "--out", p("r3"), "--balance", "xyz"}).code,
            kExitUsage);
}

TEST_F(CliTest, OutputsIndependentOfThreadCount) {
  synth("t_intersection", 20);
  tag();
  std::string first;
  for (const char* threads : {"1", "4"}) {
    const auto r = run({"eval", "--scenarios", p("scenarios.json"), "--maps", p("map.json"), "--predictions",
                        p("predictions_lane_fan.json"), "--tags", p("tags.json"), "--threads", threads, "--out",
                        p(std::string("m") + threads + ".json")});
    ASSERT_EQ(r.code, 0);
    const std::string text = io::read_text(p(std::string("m") + threads + ".json"));
    if (first.empty()) first = text;
    EXPECT_EQ(text, first);
  }
}

TEST(ExitCodes, Mapping) {
  EXPECT_EQ(exit_code_for(ErrorKind::kInvalidArgument), 1);
  EXPECT_EQ(exit_code_for(ErrorKind::kSchema), 2);
  EXPECT_EQ(exit_code_for(ErrorKind::kInvalidMap), 2);
  EXPECT_EQ(exit_code_for(ErrorKind::kDataConsistency), 3);
  EXPECT_EQ(exit_code_for(ErrorKind::kShape), 3);
  EXPECT_EQ(exit_code_for(ErrorKind::kInvariant), 4);
}

}  // namespace
}  // namespace trajbench
