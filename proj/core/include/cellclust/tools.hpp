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

// The four netlist tools and the optimization session they share.

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cellclust/cluster.hpp"
#include "cellclust/layout.hpp"
#include "cellclust/netlist.hpp"

namespace cellclust {

enum class ToolName {
  kEvaluateClusters,
  kGetGroupDevicesFromNets,
  kSavePotentialCluster,
  kGetBestClusterResult,
};

std::string_view to_string(ToolName tool);
/// Accepts the registered names and their spaced, any-case spelling
/// ("Get group devices from nets").
std::optional<ToolName> tool_from_string(std::string_view name);

struct ToolDescriptor {
  ToolName name;
  std::string_view description;
  /// Example arguments object, shown to the model verbatim.
  std::string_view argument_schema;
};

/// Exactly four tools, in a fixed order.
std::span<const ToolDescriptor> list_tools();

struct ToolCall {
  ToolName tool;
  nlohmann::ordered_json arguments = nlohmann::ordered_json::object();

  bool operator==(const ToolCall&) const = default;
};

/// Schema-checks `arguments` for `tool` and returns the normalized call.
/// Throws `ParseError` with a message meant to be shown to the model.
ToolCall make_tool_call(ToolName tool, const nlohmann::ordered_json& arguments);

struct Observation {
  std::string text;
  bool ok = true;

  bool operator==(const Observation&) const = default;
};

struct Snapshot {
  ClusterConstraints constraints;
  ScoreBreakdown score;
};

/// Netlist, optional layout data and the append-only history of saved
/// cluster states. Copying a session is cheap apart from the history.
class Session {
 public:
  /// Throws `ValidationError` if `initial` is not valid for the netlist.
  explicit Session(std::shared_ptr<const Netlist> netlist,
                   ClusterConstraints initial = {},
                   std::shared_ptr<const Layout> layout = nullptr,
                   std::shared_ptr<const RoutabilityReport> routability = nullptr,
                   ScoreOptions score_options = {});

  const Netlist& netlist() const { return *netlist_; }
  const std::shared_ptr<const Netlist>& netlist_ptr() const { return netlist_; }
  const Layout* layout() const { return layout_.get(); }
  const RoutabilityReport* routability() const { return routability_.get(); }
  const ScoreOptions& score_options() const { return score_options_; }

  const ClusterConstraints& current() const { return history_.back().constraints; }
  const ScoreBreakdown& current_score() const { return history_.back().score; }
  std::span<const Snapshot> history() const { return history_; }
  /// Index of the highest-scoring snapshot; ties go to the earliest.
  std::size_t best_index() const;

  ScoreBreakdown score(const ClusterConstraints& constraints) const;
  /// Validates, scores and appends a snapshot that becomes current.
  const Snapshot& commit(ClusterConstraints constraints);

 private:
  std::shared_ptr<const Netlist> netlist_;
  std::shared_ptr<const Layout> layout_;
  std::shared_ptr<const RoutabilityReport> routability_;
  ScoreOptions score_options_;
  std::vector<Snapshot> history_;
};

/// One line of a session log.
struct LogRecord {
  ToolCall call;
  bool ok = true;
  std::string observation;
  double score_after = 0.0;
};

/// Runs one tool. Only save_potential_cluster and get_best_cluster_result
/// change the session (by appending a snapshot); a failed call leaves it
/// untouched and returns `ok = false`. When `log` is given the call is
/// appended to it.
Observation invoke(Session& session, const ToolCall& call,
                   std::vector<LogRecord>* log = nullptr);

nlohmann::ordered_json tool_call_to_json(const ToolCall& call);
nlohmann::ordered_json log_record_to_json(const LogRecord& record);
LogRecord log_record_from_json(const nlohmann::ordered_json& j);
/// JSON lines, one compact record per line.
std::string serialize_session_log(std::span<const LogRecord> records);
std::vector<LogRecord> parse_session_log(std::string_view text);

struct ReplayResult {
  bool pass = true;
  std::size_t steps = 0;
  /// 1-based index of the first record that did not reproduce.
  std::optional<std::size_t> divergent_step;
  std::string detail;
};

/// Re-executes the recorded calls against `initial` and compares each
/// observation, ok flag and score.
ReplayResult replay_session_log(Session initial,
                                std::span<const LogRecord> records);

}  // namespace cellclust
