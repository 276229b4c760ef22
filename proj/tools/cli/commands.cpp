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

#include "commands.hpp"

#include <iostream>
#include <memory>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "cellclust/agent.hpp"
#include "cellclust/cluster.hpp"
#include "cellclust/error.hpp"
#include "cellclust/format.hpp"
#include "cellclust/io.hpp"
#include "cellclust/optimize.hpp"
#include "cellclust/prompts.hpp"
#include "cellclust/tools.hpp"
#include "goldens.hpp"

namespace cellclust::cli {

using nlohmann::ordered_json;

namespace {

SessionInputs load(const InputPaths& p) {
  return load_inputs(p.netlist, p.constraints, p.layout, p.routability);
}

ordered_json read_json_file(const fs::path& path) {
  return ordered_json::parse(read_text_file(path));
}

GuidanceConfig load_guidance(const fs::path& path) {
  GuidanceConfig g;
  if (!path.empty()) g.guidance_text = read_text_file(path);
  return g;
}

void print_breakdown(std::ostream& out, const ScoreBreakdown& s) {
  fmt::print(out, "Cluster score: {}\nNumber of clusters: {}\n",
             format_score(s.total), s.per_cluster.size());
  if (s.per_cluster.empty()) return;
  std::size_t width = 7;
  for (const ClusterScore& c : s.per_cluster) width = std::max(width, c.name.size());
  fmt::print(out, "\n{:<{}}  {:>7}  {:>15}  {:>12}  {:>12}\n", "cluster", width,
             "devices", "diffusion_pairs", "common_gates", "contribution");
  for (const ClusterScore& c : s.per_cluster) {
    fmt::print(out, "{:<{}}  {:>7}  {:>15}  {:>12}  {:>12}\n", c.name, width,
               c.device_count, c.diffusion_pairs, c.common_gates,
               format_score(c.contribution));
  }
}

// Runs `body`, turning library errors into a message and exit code 2.
template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ValidationError& e) {
    fmt::print(err, "error: invalid cluster constraints\n{}",
               e.report().to_string());
    return 1;
  } catch (const Error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 2;
  } catch (const nlohmann::json::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 2;
  }
}

}  // namespace

int cmd_score(const ScoreOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Netlist netlist = read_netlist_file(opts.inputs.netlist);
    ClusterConstraints constraints;
    if (!opts.inputs.constraints.empty()) {
      constraints = read_constraints_file(opts.inputs.constraints);
    }
    ValidationReport report = validate_constraints(netlist, constraints);
    if (!report.valid()) throw ValidationError(std::move(report));
    cellclust::ScoreOptions score_opts;
    score_opts.excluded_nets = opts.excluded_nets;
    print_breakdown(out, cluster_score(netlist, constraints, score_opts));
    return 0;
  });
}

int cmd_prompts(const PromptsOptions& opts, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    if (!opts.goldens.empty()) {
      const fs::path fixtures =
          opts.fixtures.empty() ? opts.goldens.parent_path() / "fixtures"
                                : opts.fixtures;
      if (opts.bless) {
        for (const std::string& name : bless_golden_corpus(fixtures, opts.goldens)) {
          fmt::print(out, "blessed {}\n", (opts.goldens / name).string());
        }
        return 0;
      }
      const auto mismatches = check_golden_corpus(fixtures, opts.goldens);
      for (const GoldenMismatch& m : mismatches) {
        fmt::print(err, "golden {}: {}\n", m.name, m.reason);
      }
      if (!mismatches.empty()) return 1;
      fmt::print(out, "goldens up to date\n");
      return 0;
    }
    if (opts.bless) throw Error("--bless needs --goldens");
    if (opts.out_dir.empty()) throw Error("--out is required");
    const SessionInputs in = load(opts.inputs);
    const Session session = in.make_session();
    std::vector<std::pair<std::string, std::string>> files;
    files.emplace_back("topology.txt",
                       netlist_topology_prompt(*in.netlist, session.current(),
                                               session.current_score()));
    if (in.layout) files.emplace_back("layout.txt", physical_layout_prompt(*in.layout));
    if (in.routability) {
      files.emplace_back("routability.txt", routability_prompt(*in.routability));
    }
    files.emplace_back("system.txt", system_guidance(load_guidance(opts.guidance)));
    for (const auto& [name, content] : files) {
      write_text_file(opts.out_dir / name, content);
      fmt::print(out, "wrote {}\n", (opts.out_dir / name).string());
    }
    return 0;
  });
}

int cmd_sa(const SaOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    SAConfig config;
    if (!opts.config.empty()) config = sa_config_from_json(read_json_file(opts.config));
    if (opts.seed) config.seed = *opts.seed;
    if (opts.iterations) config.total_iterations = *opts.iterations;
    if (opts.k_max) config.k_max = *opts.k_max;
    config.validate();
    const SessionInputs in = load(opts.inputs);
    const SAResult result = run_sa(in.make_session(), config);
    const std::string summary = trace_summary_to_json(result.summary).dump(2) + "\n";
    if (!opts.out_dir.empty()) {
      write_text_file(opts.out_dir / "trace.json", summary);
      write_text_file(opts.out_dir / "constraints.json",
                      render_constraints_blob(result.best_constraints) + "\n");
      write_text_file(opts.out_dir / "log.jsonl", serialize_session_log(result.log));
    }
    out << summary;
    print_breakdown(out, result.best_score);
    return 0;
  });
}

int cmd_agent(const AgentOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    AgentConfig config;
    if (!opts.config.empty()) {
      config = agent_config_from_json(read_json_file(opts.config));
    }
    if (opts.backend) {
      config = agent_config_from_json(ordered_json{{"backend", *opts.backend}}, config);
    }
    if (!opts.transcript.empty()) config.transcript = opts.transcript;
    if (opts.endpoint) config.endpoint = *opts.endpoint;
    if (opts.model) config.model = *opts.model;
    if (opts.max_iterations) config.max_iterations = *opts.max_iterations;
    if (opts.temperature) config.llm_temperature = *opts.temperature;
    config.validate();

    const SessionInputs in = load(opts.inputs);
    Session session = in.make_session();
    std::unique_ptr<ChatBackend> backend = make_backend(config);
    std::vector<LogRecord> log;
    const AgentTrace trace =
        run_agent(session, *backend, config, load_guidance(opts.guidance), &log);
    const ClusterConstraints& result =
        trace.final_constraints ? *trace.final_constraints : trace.best_constraints;
    if (!opts.out_dir.empty()) {
      write_text_file(opts.out_dir / "trace.json", serialize_trace(trace));
      write_text_file(opts.out_dir / "constraints.json",
                      render_constraints_blob(result) + "\n");
      write_text_file(opts.out_dir / "log.jsonl", serialize_session_log(log));
    }
    fmt::print(out, "outcome: {}\nsteps: {}\n", to_string(trace.outcome),
               trace.steps.size());
    print_breakdown(out, session.score(result));
    if (trace.outcome == AgentOutcome::kBackendError) {
      fmt::print(err, "backend error: {}\n", trace.error);
      return 1;
    }
    return 0;
  });
}

RunConfig resolve_batch_config(const BatchOptions& opts) {
  RunConfig config;
  if (!opts.config.empty()) {
    config = run_config_from_json(read_json_file(opts.config),
                                  opts.config.parent_path());
  }
  if (!opts.inputs.netlist.empty()) config.netlist = opts.inputs.netlist;
  if (!opts.inputs.constraints.empty()) config.constraints = opts.inputs.constraints;
  if (!opts.inputs.layout.empty()) config.layout = opts.inputs.layout;
  if (!opts.inputs.routability.empty()) config.routability = opts.inputs.routability;
  if (opts.mode) {
    config = run_config_from_json(ordered_json{{"mode", *opts.mode}}, {}, config);
  }
  if (opts.runs) config.runs = *opts.runs;
  if (opts.jobs) config.jobs = *opts.jobs;
  if (opts.seed) config.sa.seed = *opts.seed;
  if (opts.iterations) config.sa.total_iterations = *opts.iterations;
  if (!opts.transcripts.empty()) config.transcripts = opts.transcripts;
  if (!opts.metrics.empty()) config.metrics = opts.metrics;
  if (!opts.out_dir.empty()) config.output = opts.out_dir;
  config.validate();
  return config;
}

int cmd_batch(const BatchOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig config = resolve_batch_config(opts);
    const BatchReport report = run_batch(config);
    for (const RunRecord& r : report.runs) {
      fmt::print(out, "run {}: {} score={}{}\n", r.index, r.outcome,
                 format_score(r.final_score), r.valid ? "" : " (invalid)");
    }
    fmt::print(out, "initial score: {}\nbest score: {}\nimprovement: {}\n",
               format_score(report.initial_score), format_score(report.best_score),
               format_decimal(report.improvement_ratio, 4));
    fmt::print(out, "report: {}\n", (config.output / "report.json").string());
    if (!report.any_valid()) {
      fmt::print(err, "error: no run produced a valid result\n");
      return 1;
    }
    fmt::print(out, "best run: {}\n", *report.best_run);
    return 0;
  });
}

int cmd_replay(const ReplayOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.log.empty() == opts.trace.empty()) {
      throw Error("give exactly one of --log or --trace");
    }
    const SessionInputs in = load(opts.inputs);
    ReplayResult result;
    if (!opts.log.empty()) {
      result = replay_session_log(in.make_session(),
                                  parse_session_log(read_text_file(opts.log)));
    } else {
      result = replay_trace(in.make_session(), parse_trace(read_text_file(opts.trace)));
    }
    if (result.pass) {
      fmt::print(out, "PASS ({} steps)\n", result.steps);
      return 0;
    }
    fmt::print(out, "FAIL at step {}\n", result.divergent_step.value_or(0));
    fmt::print(err, "{}\n", result.detail);
    return 1;
  });
}

int cmd_tools(const ToolsOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.list) {
      for (const ToolDescriptor& t : list_tools()) {
        fmt::print(out, "{}\n  {}\n  arguments: {}\n", to_string(t.name),
                   t.description, t.argument_schema);
      }
      return 0;
    }
    auto tool = tool_from_string(opts.tool);
    if (!tool) throw Error(fmt::format("unknown tool '{}'", opts.tool));
    const ToolCall call = make_tool_call(*tool, ordered_json::parse(opts.args));
    const SessionInputs in = load(opts.inputs);
    Session session = in.make_session();
    const Observation obs = invoke(session, call);
    fmt::print(obs.ok ? out : err, "{}\n", obs.text);
    return obs.ok ? 0 : 1;
  });
}

}  // namespace cellclust::cli
