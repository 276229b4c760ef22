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

#include "cellclust/prompts.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "cellclust/error.hpp"
#include "cellclust/format.hpp"
#include "cellclust/tools.hpp"

namespace cellclust {

namespace {

constexpr std::string_view kDefaultGuidance =
    R"(You are an experienced standard cell layout designer. Your job is to improve the device cluster constraints of a standard cell. The layout generator places the devices of one cluster next to each other, so good clusters lead to a narrower cell with shorter wires and no routing failures.

Designer guidance:
- Transistors whose source or drain terminals connect to the same net can share a diffusion region when they sit in the same cluster. Shared diffusion removes diffusion breaks and reduces the cell width.
- A PMOS and an NMOS transistor driven by the same gate net can share one gate column when they sit in the same cluster.
- Start from the nets with many connections, especially nets next to dummy devices (diffusion breaks) in the physical layout, and group the devices on those nets.
- When the routability report lists unrouted nets, lower the pin density in the unrouted region: cluster the devices there so that PMOS and NMOS transistors share common terminals and diffusion.
- A higher cluster score means more potential diffusion sharing and common gates. Save promising clusters as you go and return to the best result when the search stops improving.)";

}  // namespace

std::string_view default_guidance_text() { return kDefaultGuidance; }

std::string netlist_topology_prompt(const Netlist& netlist,
                                    const ClusterConstraints& constraints,
                                    const ScoreBreakdown& score) {
  std::string out = "MOSFET connection and description:\n";
  for (const Mosfet& m : netlist.devices()) {
    out += format_device(m, /*with_bulk=*/false);
    out += '\n';
  }
  out += "\nPrevious cluster constraints:\n";
  out += render_constraints_blob(constraints);
  out += fmt::format("\n\nCluster score: {}\nNumber of clusters: {}\n",
                     format_score(score.total), constraints.size());
  return out;
}

std::string physical_layout_prompt(const Layout& layout) {
  std::string out = fmt::format(
      "Physical layout (x unit: half CPP, y unit: half cell row; {} columns, "
      "{} rows):\n",
      layout.columns(), layout.rows());
  for (int x = 0; x < layout.columns(); ++x) {
    for (int y = 0; y < layout.rows(); ++y) {
      const PlacedSite* site = layout.at({x, y});
      if (site == nullptr) {
        out += fmt::format("(x={}, y={}): net=dummy device=dummy terminal=-\n",
                           x, y);
      } else {
        out += fmt::format("(x={}, y={}): net={} device={} terminal={}\n", x, y,
                           site->net, site->device,
                           terminal_letter(site->terminal));
      }
    }
  }
  return out;
}

std::string routability_prompt(const RoutabilityReport& report) {
  std::string out = "Routability report:\n";
  if (report.unrouted.empty()) return out + "All nets routed.\n";
  for (const UnroutedNet& u : report.unrouted) {
    std::vector<std::string> pairs;
    for (const auto& [x1, x2] : u.terminal_x_pairs) {
      pairs.push_back(fmt::format("({}, {})", x1, x2));
    }
    out += fmt::format("Unrouted net {}: terminal x-coordinate pairs: {}\n",
                       u.net, pairs.empty() ? "none" : fmt::format("{}", fmt::join(pairs, ", ")));
    out += fmt::format("Devices in unrouted region: {}\n",
                       u.region_devices.empty()
                           ? "none"
                           : fmt::format("{}", fmt::join(u.region_devices, ", ")));
  }
  return out;
}

std::string tools_prompt() {
  std::string out = "You have access to the following netlist tools:\n";
  for (const ToolDescriptor& t : list_tools()) {
    out += fmt::format("\n{}: {}\nArguments: {}\n", to_string(t.name),
                       t.description, t.argument_schema);
  }
  return out;
}

std::string react_format_prompt() {
  std::vector<std::string_view> names;
  for (const ToolDescriptor& t : list_tools()) names.push_back(to_string(t.name));
  return fmt::format(
      R"(Respond in the following format. Each turn contains exactly one Thought and one Action.

Thought: reason about the netlist, the layout and the previous observations, and decide what to do next
Action:
```
{{"action": "<tool name>", "action_input": <tool arguments>}}
```

The action is a single JSON blob with the keys "action" and "action_input". Valid actions are "Final Answer" and {}. After each action you receive "Observation: <tool result>". Never write an Observation yourself.

When the clusters cannot be improved further, finish with:

Thought: I know the final cluster constraints
Action:
```
{{"action": "Final Answer", "action_input": {{"<cluster name>": ["<device>", ...], ...}}}}
```
)",
      fmt::join(names, ", "));
}

std::string system_guidance(const GuidanceConfig& config) {
  if (config.guidance_text.empty()) throw Error("guidance text is empty");
  std::string out = config.guidance_text;
  if (!out.empty() && out.back() != '\n') out += '\n';
  out += '\n';
  out += tools_prompt();
  out += '\n';
  out += react_format_prompt();
  return out;
}

}  // namespace cellclust
