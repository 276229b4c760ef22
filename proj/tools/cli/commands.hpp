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

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cellclust/batch.hpp"

namespace cellclust::cli {

namespace fs = std::filesystem;

/// Netlist, constraints and optional layout inputs shared by most commands.
struct InputPaths {
  fs::path netlist;
  fs::path constraints;
  fs::path layout;
  fs::path routability;
};

struct ScoreOptions {
  InputPaths inputs;
  std::vector<std::string> excluded_nets;
};
int cmd_score(const ScoreOptions& opts, std::ostream& out, std::ostream& err);

struct PromptsOptions {
  InputPaths inputs;
  fs::path guidance;
  fs::path out_dir;
  /// Golden mode: compare (or with `bless`, rewrite) the golden corpus.
  fs::path goldens;
  fs::path fixtures;
  bool bless = false;
};
int cmd_prompts(const PromptsOptions& opts, std::ostream& out, std::ostream& err);

struct SaOptions {
  InputPaths inputs;
  fs::path config;
  std::optional<std::uint64_t> seed;
  std::optional<int> iterations;
  std::optional<int> k_max;
  fs::path out_dir;
};
int cmd_sa(const SaOptions& opts, std::ostream& out, std::ostream& err);

struct AgentOptions {
  InputPaths inputs;
  fs::path config;
  std::optional<std::string> backend;
  fs::path transcript;
  std::optional<std::string> endpoint;
  std::optional<std::string> model;
  std::optional<int> max_iterations;
  std::optional<double> temperature;
  fs::path guidance;
  fs::path out_dir;
};
int cmd_agent(const AgentOptions& opts, std::ostream& out, std::ostream& err);

struct BatchOptions {
  fs::path config;
  InputPaths inputs;
  std::optional<std::string> mode;
  std::optional<int> runs;
  std::optional<int> jobs;
  std::optional<std::uint64_t> seed;
  std::optional<int> iterations;
  std::vector<fs::path> transcripts;
  std::vector<fs::path> metrics;
  fs::path out_dir;
};
/// Builds the effective run configuration: config file first, flags on top.
RunConfig resolve_batch_config(const BatchOptions& opts);
int cmd_batch(const BatchOptions& opts, std::ostream& out, std::ostream& err);

struct ReplayOptions {
  InputPaths inputs;
  fs::path log;
  fs::path trace;
};
int cmd_replay(const ReplayOptions& opts, std::ostream& out, std::ostream& err);

struct ToolsOptions {
  InputPaths inputs;
  bool list = false;
  std::string tool;
  std::string args = "{}";
};
int cmd_tools(const ToolsOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace cellclust::cli
