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

#include "goldens.hpp"

#include <memory>

#include "cellclust/agent.hpp"
#include "cellclust/batch.hpp"
#include "cellclust/io.hpp"
#include "cellclust/prompts.hpp"

namespace cellclust::cli {

namespace fs = std::filesystem;

std::vector<GoldenFile> render_golden_corpus(const fs::path& fixtures_dir) {
  auto at = [&](const char* name) { return fixtures_dir / name; };
  std::vector<GoldenFile> out;

  const SessionInputs nand2 = load_inputs(at("nand2.net"),
                                          at("nand2_two_clusters.json"), {}, {});
  const Session nand2_session = nand2.make_session();
  out.push_back({"nand2_topology.txt",
                 netlist_topology_prompt(*nand2.netlist, nand2_session.current(),
                                         nand2_session.current_score())});

  const Layout toy = read_layout_file(at("toy_layout.json"));
  out.push_back({"toy_layout.txt", physical_layout_prompt(toy)});

  const RoutabilityReport seq = read_routability_file(at("seq_routability.json"));
  out.push_back({"seq_routability.txt", routability_prompt(seq)});

  out.push_back({"system_prompt.txt", system_guidance(GuidanceConfig{})});

  out.push_back({"nand2_initial_prompt.txt",
                 build_initial_prompt(nand2_session, GuidanceConfig{})});

  const SessionInputs inv = load_inputs(at("inv.net"), {}, at("toy_layout.json"),
                                        at("inv_routability.json"));
  out.push_back({"inv_full_initial_prompt.txt",
                 build_initial_prompt(inv.make_session(), GuidanceConfig{})});
  return out;
}

std::vector<GoldenMismatch> check_golden_corpus(const fs::path& fixtures_dir,
                                                const fs::path& goldens_dir) {
  std::vector<GoldenMismatch> out;
  for (const GoldenFile& g : render_golden_corpus(fixtures_dir)) {
    const fs::path path = goldens_dir / g.name;
    if (!fs::exists(path)) {
      out.push_back({g.name, "missing"});
      continue;
    }
    if (read_text_file(path) != g.content) {
      out.push_back({g.name, "content differs"});
    }
  }
  return out;
}

std::vector<std::string> bless_golden_corpus(const fs::path& fixtures_dir,
                                             const fs::path& goldens_dir) {
  std::vector<std::string> names;
  for (const GoldenFile& g : render_golden_corpus(fixtures_dir)) {
    write_text_file(goldens_dir / g.name, g.content);
    names.push_back(g.name);
  }
  return names;
}

}  // namespace cellclust::cli
