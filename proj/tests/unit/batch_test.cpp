// Copyright 2026 The cellclust Authors
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

#include "cellclust/batch.hpp"

#include <filesystem>
#include <memory>
#include <string>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "cellclust/io.hpp"
#include "oracle.hpp"

namespace cellclust {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

fs::path TempDir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("cellclust_batch_" + name);
  fs::remove_all(p);
  return p;
}

RunConfig SaConfig(const std::string& out, int jobs) {
  RunConfig c;
  c.netlist = testing::fixture("nand2.net");
  c.layout = testing::fixture("nand2_layout.json");
  c.routability = testing::fixture("nand2_routability.json");
  c.runs = 3;
  c.jobs = jobs;
  c.sa.total_iterations = 300;
  c.sa.seed = 11;
  c.output = TempDir(out);
  return c;
}

TEST(ImprovementRatio, Formula) {
  EXPECT_EQ(improvement_ratio(1.0, 1.25), 0.25);
  EXPECT_EQ(improvement_ratio(3.0, 4.0), 0.3333);
  EXPECT_EQ(improvement_ratio(0.0, 0.0), 0.0);
  EXPECT_EQ(improvement_ratio(0.0, 1e-9), 1.0);
}

TEST(RunBatch, SaIsDeterministicAcrossJobCounts) {
  const RunConfig config_a = SaConfig("a", 1);
  const BatchReport a = run_batch(config_a);
  const BatchReport b = run_batch(SaConfig("b", 3));
  auto strip = [](BatchReport r) { return batch_report_to_json(r).dump(); };
  EXPECT_EQ(strip(a), strip(b));
  ASSERT_EQ(a.runs.size(), 3);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(a.runs[static_cast<std::size_t>(i)].seed, 11u + static_cast<unsigned>(i));
    EXPECT_TRUE(a.runs[static_cast<std::size_t>(i)].valid);
  }
  const fs::path out = config_a.output;
  for (const char* f : {"report.json", "run_0/trace.json", "run_2/constraints.json",
                        "run_1/log.jsonl"}) {
    EXPECT_TRUE(fs::exists(out / f)) << f;
  }
  const ClusterConstraints best = read_constraints_file(
      out / a.runs[static_cast<std::size_t>(*a.best_run)].constraints_path);
  const Netlist n = read_netlist_file(testing::fixture("nand2.net"));
  EXPECT_EQ(cluster_score(n, best).total, a.best_score);
}

TEST(RunBatch, SaLogsReplay) {
  const RunConfig c = SaConfig("replay", 2);
  run_batch(c);
  const SessionInputs in = load_inputs(c.netlist, {}, c.layout, c.routability);
  for (int i = 0; i < c.runs; ++i) {
    const auto log = parse_session_log(
        read_text_file(c.output / ("run_" + std::to_string(i)) / "log.jsonl"));
    EXPECT_TRUE(replay_session_log(in.make_session(), log).pass) << i;
  }
}

TEST(RunBatch, AgentRunsAndBestSelection) {
  RunConfig c;
  c.netlist = testing::fixture("nand2.net");
  c.mode = RunMode::kAgent;
  c.runs = 4;
  c.jobs = 2;
  c.output = TempDir("agent");
  const auto transcript = [](const char* name) {
    return read_transcript_file(testing::fixture(name));
  };
  const BatchReport r = run_batch(c, [&](int index) -> std::unique_ptr<ChatBackend> {
    switch (index) {
      case 0:
        return std::make_unique<ScriptedBackend>(transcript("transcript_recover.jsonl"));
      case 1:
        return std::make_unique<ScriptedBackend>(transcript("transcript_final.jsonl"));
      case 2:
        return std::make_unique<ScriptedBackend>(transcript("transcript_cap.jsonl"));
      default:
        return std::make_unique<ScriptedBackend>(std::vector<std::string>{"x"});
    }
  });
  ASSERT_EQ(r.runs.size(), 4);
  EXPECT_EQ(r.runs[0].outcome, "final_answer");
  EXPECT_EQ(r.runs[2].outcome, "iteration_cap");
  EXPECT_TRUE(r.runs[2].valid);
  EXPECT_EQ(r.runs[3].outcome, "backend_error");
  EXPECT_FALSE(r.runs[3].valid);
  EXPECT_EQ(r.best_run, 1);
  EXPECT_EQ(r.best_score, 1.25);
  EXPECT_EQ(r.initial_score, 0.0);
}

TEST(RunBatch, TiesGoToLowestIndex) {
  RunConfig c;
  c.netlist = testing::fixture("nand2.net");
  c.mode = RunMode::kAgent;
  c.runs = 3;
  c.transcripts = {testing::fixture("transcript_final.jsonl")};
  c.output = TempDir("ties");
  const BatchReport r = run_batch(c);
  EXPECT_EQ(r.best_run, 0);
}

TEST(RunConfig, JsonResolvesRelativePaths) {
  const fs::path file = testing::fixture("batch_agent.json");
  const RunConfig c = run_config_from_json(
      ordered_json::parse(read_text_file(file)), file.parent_path());
  EXPECT_EQ(c.netlist, file.parent_path() / "nand2.net");
  EXPECT_EQ(c.mode, RunMode::kAgent);
  EXPECT_EQ(c.runs, 3);
  ASSERT_EQ(c.transcripts.size(), 3);
  EXPECT_EQ(c.transcripts[1], file.parent_path() / "transcript_cap.jsonl");
  EXPECT_THROW(run_config_from_json(ordered_json::parse(R"({"run": 3})"), "."), ParseError);
  EXPECT_THROW(run_config_from_json(ordered_json::parse(R"({"mode": "ga"})"), "."), ParseError);
}

TEST(LoadInputs, CrossChecks) {
  EXPECT_THROW(load_inputs(testing::fixture("nand2.net"), {}, testing::fixture("toy_layout.json"),
                           {}),
               Error);
  EXPECT_THROW(load_inputs(testing::fixture("nand2.net"), {}, {},
                           testing::fixture("seq_routability.json")),
               Error);
  const SessionInputs ok = load_inputs(testing::fixture("nand2.net"),
                                       testing::fixture("nand2_one_cluster.json"), {}, {});
  EXPECT_EQ(ok.make_session().current_score().total, 1.25);
}

}  // namespace
}  // namespace cellclust
