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

// Batch orchestration: N independent optimization runs of one cell, with
// per-run artifacts on disk and a report selecting the best valid result.
//
// Output layout:
//   <output>/run_<i>/trace.json        SA trace summary or agent trace
//   <output>/run_<i>/constraints.json  Final Answer blob of the run result
//   <output>/run_<i>/log.jsonl         session log (replayable)
//   <output>/report.json

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cellclust/agent.hpp"
#include "cellclust/cluster.hpp"
#include "cellclust/layout.hpp"
#include "cellclust/optimize.hpp"
#include "cellclust/prompts.hpp"

namespace cellclust {

enum class RunMode { kSa, kAgent };

struct RunConfig {
  std::filesystem::path netlist;
  std::filesystem::path constraints;  // empty: no initial clusters
  std::filesystem::path layout;
  std::filesystem::path routability;
  std::filesystem::path guidance;  // empty: built-in guidance
  RunMode mode = RunMode::kSa;
  int runs = 10;
  int jobs = 1;
  SAConfig sa;
  AgentConfig agent;
  /// Scripted agent runs: run i replays transcripts[i % size].
  std::vector<std::filesystem::path> transcripts;
  /// Externally measured layout metrics, attached to run i when present.
  std::vector<std::filesystem::path> metrics;
  std::filesystem::path output = "out";

  void validate() const;
};

/// Relative paths in `j` are resolved against `base_dir`. Missing keys keep
/// the values in `base`.
RunConfig run_config_from_json(const nlohmann::ordered_json& j,
                               const std::filesystem::path& base_dir,
                               RunConfig base = {});

struct SessionInputs {
  std::shared_ptr<const Netlist> netlist;
  ClusterConstraints initial;
  std::shared_ptr<const Layout> layout;
  std::shared_ptr<const RoutabilityReport> routability;

  Session make_session() const;
};

/// Reads and cross-checks the netlist, constraints, layout and report.
SessionInputs load_inputs(const std::filesystem::path& netlist,
                          const std::filesystem::path& constraints,
                          const std::filesystem::path& layout,
                          const std::filesystem::path& routability);

struct RunRecord {
  int index = 0;
  std::optional<std::uint64_t> seed;
  std::string transcript;
  std::string outcome;
  bool valid = false;
  double final_score = 0.0;
  std::string constraints_path;  // relative to the output directory
  std::optional<LayoutMetrics> metrics;
};

struct BatchReport {
  RunMode mode = RunMode::kSa;
  double initial_score = 0.0;
  std::vector<RunRecord> runs;
  std::optional<int> best_run;
  double best_score = 0.0;
  double improvement_ratio = 0.0;

  bool any_valid() const { return best_run.has_value(); }
};

/// (best - initial) / max(initial, 1e-9), rounded half-even to 4 decimals.
double improvement_ratio(double initial, double best);

nlohmann::ordered_json batch_report_to_json(const BatchReport& report);

/// Returns the backend for agent run `index`.
using BackendFactory = std::function<std::unique_ptr<ChatBackend>(int index)>;

/// Runs `config.runs` isolated sessions on up to `config.jobs` threads and
/// writes all artifacts. When `backends` is empty, agent runs use scripted
/// transcripts if any are configured and `make_backend` otherwise.
BatchReport run_batch(const RunConfig& config,
                      const BackendFactory& backends = nullptr);

}  // namespace cellclust
