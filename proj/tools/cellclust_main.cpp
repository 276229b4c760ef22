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

// cellclust: score, explore and export standard-cell cluster constraints.

#include <cstdlib>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "cli/commands.hpp"

namespace {

using namespace cellclust::cli;

void add_inputs(CLI::App* cmd, InputPaths& p, bool netlist_required = true) {
  auto* opt = cmd->add_option("--netlist", p.netlist, "Netlist file");
  if (netlist_required) opt->required();
  cmd->add_option("--constraints", p.constraints,
                  "Cluster constraints JSON (default: no clusters)");
  cmd->add_option("--layout", p.layout, "Layout JSON");
  cmd->add_option("--routability", p.routability, "Routability report JSON");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Standard-cell cluster constraint optimization"};
  app.require_subcommand(1);
  int code = 0;

  ScoreOptions score;
  auto* score_cmd = app.add_subcommand("score", "Print the cluster score");
  add_inputs(score_cmd, score.inputs);
  score_cmd->add_option("--exclude-net", score.excluded_nets,
                        "Net ignored by the score (repeatable)");
  score_cmd->callback([&] { code = cmd_score(score, std::cout, std::cerr); });

  PromptsOptions prompts;
  auto* prompts_cmd = app.add_subcommand("prompts", "Render prompt documents");
  add_inputs(prompts_cmd, prompts.inputs, /*netlist_required=*/false);
  prompts_cmd->add_option("--guidance", prompts.guidance, "Guidance text override");
  prompts_cmd->add_option("--out", prompts.out_dir, "Output directory");
  prompts_cmd->add_option("--goldens", prompts.goldens,
                          "Check the golden corpus in this directory");
  prompts_cmd->add_option("--fixtures", prompts.fixtures,
                          "Fixture inputs of the golden corpus");
  prompts_cmd->add_flag("--bless", prompts.bless, "Regenerate the golden files");
  prompts_cmd->callback([&] {
    if (prompts.goldens.empty() && prompts.inputs.netlist.empty()) {
      throw CLI::RequiredError("--netlist");
    }
    code = cmd_prompts(prompts, std::cout, std::cerr);
  });

  SaOptions sa;
  std::optional<std::uint64_t> sa_seed;
  auto* sa_cmd = app.add_subcommand("sa", "Run one simulated-annealing search");
  add_inputs(sa_cmd, sa.inputs);
  sa_cmd->add_option("--config", sa.config, "SA config JSON");
  sa_cmd->add_option("--seed", sa.seed, "RNG seed");
  sa_cmd->add_option("--iterations", sa.iterations, "Total iterations");
  sa_cmd->add_option("--k-max", sa.k_max, "Largest number of nets per move");
  sa_cmd->add_option("--out", sa.out_dir, "Output directory");
  sa_cmd->callback([&] { code = cmd_sa(sa, std::cout, std::cerr); });

  AgentOptions agent;
  auto* agent_cmd = app.add_subcommand("agent", "Run one agent loop");
  add_inputs(agent_cmd, agent.inputs);
  agent_cmd->add_option("--config", agent.config, "Agent config JSON");
  agent_cmd->add_option("--backend", agent.backend, "http or scripted")
      ->check(CLI::IsMember({"http", "scripted"}));
  agent_cmd->add_option("--transcript", agent.transcript,
                        "Scripted responses (JSON lines)");
  agent_cmd->add_option("--endpoint", agent.endpoint, "Chat-completions URL");
  agent_cmd->add_option("--model", agent.model, "Model name");
  agent_cmd->add_option("--max-iterations", agent.max_iterations,
                        "Thought/Action/Observation cap");
  agent_cmd->add_option("--temperature", agent.temperature, "Sampling temperature");
  agent_cmd->add_option("--guidance", agent.guidance, "Guidance text override");
  agent_cmd->add_option("--out", agent.out_dir, "Output directory");
  agent_cmd->callback([&] { code = cmd_agent(agent, std::cout, std::cerr); });

  BatchOptions batch;
  auto* batch_cmd = app.add_subcommand("batch", "Run several independent searches");
  batch_cmd->add_option("--config", batch.config, "Run config JSON");
  add_inputs(batch_cmd, batch.inputs, /*netlist_required=*/false);
  batch_cmd->add_option("--mode", batch.mode, "sa or agent")
      ->check(CLI::IsMember({"sa", "agent"}));
  batch_cmd->add_option("--runs", batch.runs, "Number of runs");
  batch_cmd->add_option("--jobs", batch.jobs, "Runs executed concurrently");
  batch_cmd->add_option("--seed", batch.seed, "Base SA seed (run i uses seed+i)");
  batch_cmd->add_option("--iterations", batch.iterations, "SA iterations per run");
  batch_cmd->add_option("--transcript", batch.transcripts,
                        "Scripted transcript (repeatable, cycled over runs)");
  batch_cmd->add_option("--metrics", batch.metrics,
                        "Layout metrics JSON for run i (repeatable)");
  batch_cmd->add_option("--out", batch.out_dir, "Output directory");
  batch_cmd->callback([&] { code = cmd_batch(batch, std::cout, std::cerr); });

  ReplayOptions replay;
  auto* replay_cmd = app.add_subcommand("replay", "Verify a session log or trace");
  add_inputs(replay_cmd, replay.inputs);
  replay_cmd->add_option("--log", replay.log, "Session log (JSON lines)");
  replay_cmd->add_option("--trace", replay.trace, "Agent trace JSON");
  replay_cmd->callback([&] { code = cmd_replay(replay, std::cout, std::cerr); });

  ToolsOptions tools;
  auto* tools_cmd = app.add_subcommand("tools", "Invoke one netlist tool");
  add_inputs(tools_cmd, tools.inputs, /*netlist_required=*/false);
  tools_cmd->add_flag("--list", tools.list, "List the tools");
  tools_cmd->add_option("--tool", tools.tool, "Tool name");
  tools_cmd->add_option("--args", tools.args, "Tool arguments as JSON");
  tools_cmd->callback([&] {
    if (!tools.list && (tools.tool.empty() || tools.inputs.netlist.empty())) {
      throw CLI::RequiredError("--tool and --netlist");
    }
    code = cmd_tools(tools, std::cout, std::cerr);
  });

  CLI11_PARSE(app, argc, argv);
  return code;
}
