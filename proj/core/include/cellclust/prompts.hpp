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

// Knowledge-extraction prompt documents. Every builder is a pure function of
// its inputs; the exact wording is pinned by the golden files under
// tests/goldens/.

#pragma once

#include <string>
#include <string_view>

#include "cellclust/cluster.hpp"
#include "cellclust/layout.hpp"
#include "cellclust/netlist.hpp"

namespace cellclust {

/// Built-in designer guidance.
std::string_view default_guidance_text();

struct GuidanceConfig {
  std::string guidance_text{default_guidance_text()};
};

/// Device lines, the previous constraints as a Final Answer blob, then the
/// score and cluster count.
std::string netlist_topology_prompt(const Netlist& netlist,
                                    const ClusterConstraints& constraints,
                                    const ScoreBreakdown& score);

/// Every grid coordinate in column-major order, dummies included.
std::string physical_layout_prompt(const Layout& layout);

std::string routability_prompt(const RoutabilityReport& report);

/// Descriptions and argument formats of the four tools.
std::string tools_prompt();

/// The Thought / Action / Observation response format.
std::string react_format_prompt();

/// Guidance text, then `tools_prompt()`, then `react_format_prompt()`.
std::string system_guidance(const GuidanceConfig& config);

}  // namespace cellclust
