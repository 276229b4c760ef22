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

#include <algorithm>
#include <atomic>
#include <exception>
#include <string>
#include <thread>

#include <fmt/format.h>

#include "cellclust/error.hpp"
#include "cellclust/format.hpp"
#include "text_util.hpp"

namespace cellclust {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

void RunConfig::validate() const {
  if (netlist.empty()) throw Error("run config needs a netlist path");
  if (runs < 1) throw Error("runs must be >= 1");
  if (jobs < 1) throw Error("jobs must be >= 1");
  sa.validate();
  agent.validate();
}

RunConfig run_config_from_json(const ordered_json& j, const fs::path& base_dir,
                               RunConfig base) {
  if (!j.is_object()) throw ParseError("run config must be a JSON object");
  auto path_of = [&](const ordered_json& v, std::string_view key) {
    if (!v.is_string()) {
      throw ParseError(fmt::format("run config: '{}' must be a path", key));
    }
    fs::path p = v.get<std::string>();
    return p.is_relative() ? base_dir / p : p;
  };
  auto path_list = [&](const ordered_json& v, std::string_view key) {
    if (!v.is_array()) {
      throw ParseError(fmt::format("run config: '{}' must be a list", key));
    }
    std::vector<fs::path> out;
    for (const auto& p : v) out.push_back(path_of(p, key));
    return out;
  };
  for (const auto& [key, value] : j.items()) {
    if (key == "netlist") {
      base.netlist = path_of(value, key);
    } else if (key == "constraints") {
      base.constraints = path_of(value, key);
    } else if (key == "layout") {
      base.layout = path_of(value, key);
    } else if (key == "routability") {
      base.routability = path_of(value, key);
    } else if (key == "guidance") {
      base.guidance = path_of(value, key);
    } else if (key == "output") {
      base.output = path_of(value, key);
    } else if (key == "mode") {
      if (value == "sa") {
        base.mode = RunMode::kSa;
      } else if (value == "agent") {
        base.mode = RunMode::kAgent;
      } else {
        throw ParseError("run config: 'mode' must be \"sa\" or \"agent\"");
      }
    } else if (key == "runs" || key == "jobs") {
      if (!value.is_number_integer()) {
        throw ParseError(fmt::format("run config: '{}' must be an integer", key));
      }
      (key == "runs" ? base.runs : base.jobs) = value.get<int>();
    } else if (key == "sa") {
      base.sa = sa_config_from_json(value, base.sa);
    } else if (key == "agent") {
      ordered_json agent = value;
      if (agent.is_object() && agent.contains("transcript") &&
          agent["transcript"].is_string()) {
        agent["transcript"] = path_of(agent["transcript"], "transcript").string();
      }
      base.agent = agent_config_from_json(agent, base.agent);
    } else if (key == "transcripts") {
      base.transcripts = path_list(value, key);
    } else if (key == "metrics") {
      base.metrics = path_list(value, key);
    } else {
      throw ParseError(fmt::format("run config: unknown key '{}'", key));
    }
  }
  return base;
}

Session SessionInputs::make_session() const {
  return Session(netlist, initial, layout, routability);
}

SessionInputs load_inputs(const fs::path& netlist, const fs::path& constraints,
                          const fs::path& layout, const fs::path& routability) {
  SessionInputs in;
  in.netlist = std::make_shared<const Netlist>(read_netlist_file(netlist));
  if (!constraints.empty()) in.initial = read_constraints_file(constraints);
  if (!layout.empty()) {
    in.layout = std::make_shared<const Layout>(
        read_layout_file(layout, in.netlist.get()));
  }
  if (!routability.empty()) {
    in.routability = std::make_shared<const RoutabilityReport>(
        read_routability_file(routability, in.netlist.get()));
  }
  ValidationReport report = validate_constraints(*in.netlist, in.initial);
  if (!report.valid()) throw ValidationError(std::move(report));
  return in;
}

double improvement_ratio(double initial, double best) {
  const double ratio = (best - initial) / std::max(initial, 1e-9);
  return std::stod(format_decimal(ratio, 4));
}

ordered_json batch_report_to_json(const BatchReport& report) {
  ordered_json j;
  j["mode"] = report.mode == RunMode::kSa ? "sa" : "agent";
  j["initial_score"] = report.initial_score;
  j["best_run"] = report.best_run ? ordered_json(*report.best_run)
                                  : ordered_json(nullptr);
  j["best_score"] = report.best_score;
  j["improvement_ratio"] = report.improvement_ratio;
  j["runs"] = ordered_json::array();
  for (const RunRecord& r : report.runs) {
    ordered_json run;
    run["index"] = r.index;
    if (r.seed) run["seed"] = *r.seed;
    if (!r.transcript.empty()) run["transcript"] = r.transcript;
    run["outcome"] = r.outcome;
    run["valid"] = r.valid;
    run["final_score"] = r.final_score;
    run["constraints_path"] = r.constraints_path;
    if (r.metrics) {
      run["metrics"] = {{"cell_width_cpp", r.metrics->cell_width_cpp},
                        {"total_wirelength", r.metrics->total_wirelength}};
    }
    j["runs"].push_back(std::move(run));
  }
  return j;
}

namespace {

std::string generic_path(const fs::path& p) { return p.generic_string(); }

RunRecord run_one(const RunConfig& config, const SessionInputs& inputs,
                  const GuidanceConfig& guidance,
                  const BackendFactory& backends, int index) {
  RunRecord record;
  record.index = index;
  const fs::path dir = config.output / fmt::format("run_{}", index);
  record.constraints_path = fmt::format("run_{}/constraints.json", index);
  if (static_cast<std::size_t>(index) < config.metrics.size()) {
    record.metrics = read_metrics_file(config.metrics[static_cast<std::size_t>(index)]);
  }

  ClusterConstraints result;
  if (config.mode == RunMode::kSa) {
    SAConfig sa = config.sa;
    sa.seed = Rng::stream_seed(config.sa.seed, static_cast<std::uint64_t>(index));
    record.seed = sa.seed;
    SAResult r = run_sa(inputs.make_session(), sa);
    record.outcome = "completed";
    record.valid = true;
    record.final_score = r.best_score.total;
    result = r.best_constraints;
    detail::write_file(dir / "trace.json",
                       trace_summary_to_json(r.summary).dump(2) + "\n");
    detail::write_file(dir / "log.jsonl", serialize_session_log(r.log));
  } else {
    std::unique_ptr<ChatBackend> backend;
    if (backends) {
      backend = backends(index);
    } else if (!config.transcripts.empty()) {
      const fs::path& t =
          config.transcripts[static_cast<std::size_t>(index) % config.transcripts.size()];
      record.transcript = generic_path(t.filename());
      backend = std::make_unique<ScriptedBackend>(read_transcript_file(t));
    } else {
      backend = make_backend(config.agent);
    }
    Session session = inputs.make_session();
    std::vector<LogRecord> log;
    AgentTrace trace = run_agent(session, *backend, config.agent, guidance, &log);
    record.outcome = std::string(to_string(trace.outcome));
    switch (trace.outcome) {
      case AgentOutcome::kFinalAnswer:
        record.valid = true;
        record.final_score = *trace.final_score;
        result = *trace.final_constraints;
        break;
      case AgentOutcome::kIterationCap:
        record.valid = true;
        record.final_score = trace.best_score;
        result = trace.best_constraints;
        break;
      case AgentOutcome::kBackendError:
        record.valid = false;
        record.final_score = trace.best_score;
        result = trace.best_constraints;
        break;
    }
    detail::write_file(dir / "trace.json", serialize_trace(trace));
    detail::write_file(dir / "log.jsonl", serialize_session_log(log));
  }
  detail::write_file(dir / "constraints.json",
                     render_constraints_blob(result) + "\n");
  return record;
}

}  // namespace

BatchReport run_batch(const RunConfig& config, const BackendFactory& backends) {
  config.validate();
  const SessionInputs inputs = load_inputs(config.netlist, config.constraints,
                                           config.layout, config.routability);
  GuidanceConfig guidance;
  if (!config.guidance.empty()) {
    guidance.guidance_text = detail::read_file(config.guidance);
  }

  BatchReport report;
  report.mode = config.mode;
  report.initial_score = inputs.make_session().current_score().total;
  report.runs.resize(static_cast<std::size_t>(config.runs));

  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(config.runs));
  auto worker = [&] {
    for (int i = next++; i < config.runs; i = next++) {
      try {
        report.runs[static_cast<std::size_t>(i)] =
            run_one(config, inputs, guidance, backends, i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };
  const int threads = std::min(config.jobs, config.runs);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (const RunRecord& r : report.runs) {
    if (!r.valid) continue;
    if (!report.best_run ||
        r.final_score > report.runs[static_cast<std::size_t>(*report.best_run)].final_score) {
      report.best_run = r.index;
    }
  }
  report.best_score =
      report.best_run
          ? report.runs[static_cast<std::size_t>(*report.best_run)].final_score
          : report.initial_score;
  report.improvement_ratio =
      improvement_ratio(report.initial_score, report.best_score);
  detail::write_file(config.output / "report.json",
                     batch_report_to_json(report).dump(2) + "\n");
  return report;
}

}  // namespace cellclust
