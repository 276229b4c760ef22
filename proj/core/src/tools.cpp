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

#include "cellclust/tools.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "cellclust/error.hpp"
#include "cellclust/format.hpp"
#include "json_util.hpp"
#include "text_util.hpp"

namespace cellclust {

using nlohmann::ordered_json;

namespace {

constexpr std::array<ToolDescriptor, 4> kTools = {{
    {ToolName::kEvaluateClusters,
     "Scores a complete set of cluster constraints with the simple cluster "
     "score without saving them. A higher score means more potential "
     "diffusion sharing and common gates inside the clusters.",
     R"({"clusters": {"<cluster name>": ["<device>", ...], ...}})"},
    {ToolName::kGetGroupDevicesFromNets,
     "Returns every device with a drain, gate or source terminal on any of "
     "the given nets, in netlist order.",
     R"({"nets": ["<net>", ...]})"},
    {ToolName::kSavePotentialCluster,
     "Adds the given devices as a new cluster to the current constraints and "
     "returns the updated clusters and their score. A device already in "
     "another cluster stays in whichever cluster it shares more nets with.",
     R"({"devices": ["<device>", ...]})"},
    {ToolName::kGetBestClusterResult,
     "Restores and returns the saved cluster constraints with the best score "
     "so far. Use it to go back when the search stops improving.",
     R"({})"},
}};

std::string normalize_tool_name(std::string_view name) {
  std::string out;
  for (char c : detail::trim(name)) {
    if (c == ' ' || c == '-') {
      out += '_';
    } else {
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  return out;
}

std::vector<std::string> string_list(const ordered_json& args, const char* key,
                                     ToolName tool) {
  const std::string usage =
      fmt::format("{} expects arguments {}", to_string(tool),
                  list_tools()[static_cast<std::size_t>(tool)].argument_schema);
  if (!args.is_object() || !args.contains(key) || !args[key].is_array() ||
      args[key].empty()) {
    throw ParseError(fmt::format("'{}' must be a nonempty list of strings; {}",
                                 key, usage));
  }
  if (args.size() != 1) {
    throw ParseError(fmt::format("unexpected arguments; {}", usage));
  }
  std::vector<std::string> out;
  for (const ordered_json& v : args[key]) {
    if (!v.is_string()) {
      throw ParseError(fmt::format("'{}' must be a nonempty list of strings; {}",
                                   key, usage));
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::string render_state(const ClusterConstraints& c, const ScoreBreakdown& s) {
  return fmt::format("{}\nCluster score: {}\nNumber of clusters: {}",
                     render_constraints_blob(c), format_score(s.total),
                     c.size());
}

std::string render_evaluation(const ScoreBreakdown& s) {
  std::string out = fmt::format("Cluster score: {}\nNumber of clusters: {}",
                                format_score(s.total), s.per_cluster.size());
  for (const ClusterScore& c : s.per_cluster) {
    out += fmt::format(
        "\n{}: devices={} diffusion_pairs={} common_gates={} contribution={}",
        c.name, c.device_count, c.diffusion_pairs, c.common_gates,
        format_score(c.contribution));
  }
  return out;
}

}  // namespace

std::string_view to_string(ToolName tool) {
  switch (tool) {
    case ToolName::kEvaluateClusters:
      return "evaluate_clusters";
    case ToolName::kGetGroupDevicesFromNets:
      return "get_group_devices_from_nets";
    case ToolName::kSavePotentialCluster:
      return "save_potential_cluster";
    case ToolName::kGetBestClusterResult:
      return "get_best_cluster_result";
  }
  return "unknown";
}

std::optional<ToolName> tool_from_string(std::string_view name) {
  const std::string key = normalize_tool_name(name);
  for (const ToolDescriptor& d : kTools) {
    if (key == to_string(d.name)) return d.name;
  }
  return std::nullopt;
}

std::span<const ToolDescriptor> list_tools() { return kTools; }

ToolCall make_tool_call(ToolName tool, const ordered_json& arguments) {
  ToolCall call{tool, ordered_json::object()};
  switch (tool) {
    case ToolName::kEvaluateClusters: {
      const std::string usage = fmt::format(
          "evaluate_clusters expects arguments {}", kTools[0].argument_schema);
      if (!arguments.is_object() || !arguments.contains("clusters") ||
          arguments.size() != 1) {
        throw ParseError(usage);
      }
      // Round-trip through the constraints type to check the shape.
      ClusterConstraints c;
      try {
        c = constraints_from_json(arguments["clusters"]);
      } catch (const ParseError& e) {
        throw ParseError(fmt::format("{}; {}", e.what(), usage));
      }
      call.arguments["clusters"] = constraints_to_json(c);
      break;
    }
    case ToolName::kGetGroupDevicesFromNets:
      call.arguments["nets"] = string_list(arguments, "nets", tool);
      break;
    case ToolName::kSavePotentialCluster:
      call.arguments["devices"] = string_list(arguments, "devices", tool);
      break;
    case ToolName::kGetBestClusterResult: {
      const bool empty = arguments.is_null() ||
                         (arguments.is_object() && arguments.empty()) ||
                         (arguments.is_string() && arguments.get<std::string>().empty());
      if (!empty) {
        throw ParseError("get_best_cluster_result takes no arguments; use {}");
      }
      break;
    }
  }
  return call;
}

Session::Session(std::shared_ptr<const Netlist> netlist,
                 ClusterConstraints initial,
                 std::shared_ptr<const Layout> layout,
                 std::shared_ptr<const RoutabilityReport> routability,
                 ScoreOptions score_options)
    : netlist_(std::move(netlist)),
      layout_(std::move(layout)),
      routability_(std::move(routability)),
      score_options_(std::move(score_options)) {
  if (netlist_ == nullptr) throw Error("session needs a netlist");
  commit(std::move(initial));
}

std::size_t Session::best_index() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < history_.size(); ++i) {
    if (history_[i].score.total > history_[best].score.total) best = i;
  }
  return best;
}

ScoreBreakdown Session::score(const ClusterConstraints& constraints) const {
  return cluster_score(*netlist_, constraints, score_options_);
}

const Snapshot& Session::commit(ClusterConstraints constraints) {
  ScoreBreakdown s = score(constraints);
  history_.push_back(Snapshot{std::move(constraints), std::move(s)});
  return history_.back();
}

namespace {

std::vector<std::string> arg_list(const ToolCall& call, const char* key) {
  return call.arguments.at(key).get<std::vector<std::string>>();
}

Observation dispatch(Session& session, const ToolCall& call) {
  switch (call.tool) {
    case ToolName::kEvaluateClusters: {
      ClusterConstraints c = constraints_from_json(call.arguments.at("clusters"));
      return {render_evaluation(session.score(c)), true};
    }
    case ToolName::kGetGroupDevicesFromNets: {
      auto devices = devices_on_nets(session.netlist(), arg_list(call, "nets"));
      return {fmt::format("{}", fmt::join(devices, ", ")), true};
    }
    case ToolName::kSavePotentialCluster: {
      ClusterConstraints merged = merge_cluster(
          session.netlist(), session.current(), arg_list(call, "devices"));
      const Snapshot& s = session.commit(std::move(merged));
      return {"Current clusters:\n" + render_state(s.constraints, s.score), true};
    }
    case ToolName::kGetBestClusterResult: {
      const std::size_t best = session.best_index();
      const std::size_t total = session.history().size();
      ClusterConstraints copy = session.history()[best].constraints;
      const Snapshot& s = session.commit(std::move(copy));
      return {fmt::format("Best cluster result (snapshot {} of {}):\n{}", best + 1,
                          total, render_state(s.constraints, s.score)),
              true};
    }
  }
  throw Error("unknown tool");
}

}  // namespace

Observation invoke(Session& session, const ToolCall& call,
                   std::vector<LogRecord>* log) {
  Observation obs;
  try {
    obs = dispatch(session, call);
  } catch (const Error& e) {
    obs = Observation{fmt::format("Error: {}", detail::trim(e.what())), false};
  } catch (const nlohmann::json::exception& e) {
    obs = Observation{fmt::format("Error: malformed arguments: {}", e.what()),
                      false};
  }
  if (log != nullptr) {
    log->push_back(
        LogRecord{call, obs.ok, obs.text, session.current_score().total});
  }
  return obs;
}

ordered_json tool_call_to_json(const ToolCall& call) {
  ordered_json j;
  j["tool"] = std::string(to_string(call.tool));
  j["arguments"] = call.arguments;
  return j;
}

ordered_json log_record_to_json(const LogRecord& record) {
  ordered_json j;
  j["tool"] = std::string(to_string(record.call.tool));
  j["arguments"] = record.call.arguments;
  j["ok"] = record.ok;
  j["observation"] = record.observation;
  j["score_after"] = record.score_after;
  return j;
}

LogRecord log_record_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("tool") || !j["tool"].is_string() ||
      !j.contains("ok") || !j["ok"].is_boolean() ||
      !j.contains("observation") || !j["observation"].is_string() ||
      !j.contains("score_after") || !j["score_after"].is_number()) {
    throw ParseError(
        "log record needs tool, arguments, ok, observation and score_after");
  }
  auto tool = tool_from_string(j["tool"].get<std::string>());
  if (!tool) {
    throw ParseError("unknown tool '" + j["tool"].get<std::string>() + "'");
  }
  LogRecord r;
  r.call = ToolCall{*tool, j.value("arguments", ordered_json::object())};
  r.ok = j["ok"].get<bool>();
  r.observation = j["observation"].get<std::string>();
  r.score_after = j["score_after"].get<double>();
  return r;
}

std::string serialize_session_log(std::span<const LogRecord> records) {
  std::string out;
  for (const LogRecord& r : records) {
    out += log_record_to_json(r).dump();
    out += '\n';
  }
  return out;
}

std::vector<LogRecord> parse_session_log(std::string_view text) {
  std::vector<LogRecord> out;
  std::size_t line_no = 0;
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    try {
      out.push_back(log_record_from_json(detail::parse_json_strict(line)));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return out;
}

ReplayResult replay_session_log(Session initial,
                                std::span<const LogRecord> records) {
  ReplayResult result;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const LogRecord& want = records[i];
    const Observation got = invoke(initial, want.call);
    const double score = initial.current_score().total;
    ++result.steps;
    std::string mismatch;
    if (got.ok != want.ok) {
      mismatch = fmt::format("ok is {} but the log says {}", got.ok, want.ok);
    } else if (got.text != want.observation) {
      mismatch = fmt::format("observation differs\n--- log\n{}\n--- replay\n{}",
                             want.observation, got.text);
    } else if (score != want.score_after) {
      mismatch = fmt::format("score_after is {} but the log says {}", score,
                             want.score_after);
    }
    if (!mismatch.empty()) {
      result.pass = false;
      result.divergent_step = i + 1;
      result.detail = fmt::format("step {} ({}): {}", i + 1,
                                  to_string(want.call.tool), mismatch);
      return result;
    }
  }
  return result;
}

}  // namespace cellclust
