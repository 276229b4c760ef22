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

#include "cellclust/cluster.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "json_util.hpp"
#include "text_util.hpp"

namespace cellclust {

const Cluster* ClusterConstraints::find(std::string_view name) const {
  auto it = std::find_if(clusters.begin(), clusters.end(),
                         [&](const Cluster& c) { return c.name == name; });
  return it == clusters.end() ? nullptr : &*it;
}

std::string_view to_string(IssueKind kind) {
  switch (kind) {
    case IssueKind::kUnknownDevice:
      return "unknown_device";
    case IssueKind::kDuplicateDevice:
      return "duplicate_device";
    case IssueKind::kEmptyCluster:
      return "empty_cluster";
    case IssueKind::kDuplicateClusterName:
      return "duplicate_cluster_name";
  }
  return "unknown";
}

std::string ValidationReport::to_string() const {
  std::string out;
  for (const ValidationIssue& issue : issues) {
    out += fmt::format("{}: {}\n", cellclust::to_string(issue.kind),
                       issue.detail);
  }
  return out;
}

ValidationError::ValidationError(ValidationReport report)
    : Error("invalid cluster constraints:\n" + report.to_string()),
      report_(std::move(report)) {}

ValidationReport validate_constraints(const Netlist& netlist,
                                      const ClusterConstraints& constraints) {
  ValidationReport report;
  std::unordered_set<std::string> names;
  for (const Cluster& c : constraints.clusters) {
    if (!names.insert(c.name).second) {
      report.issues.push_back({IssueKind::kDuplicateClusterName, c.name});
    }
    if (c.devices.empty()) {
      report.issues.push_back({IssueKind::kEmptyCluster, c.name});
    }
  }

  // Device name -> clusters holding it, in order of first mention.
  std::vector<std::string> order;
  std::unordered_map<std::string, std::vector<std::string>> owners;
  for (const Cluster& c : constraints.clusters) {
    for (const std::string& d : c.devices) {
      if (netlist.find(d) == nullptr) {
        report.issues.push_back(
            {IssueKind::kUnknownDevice, fmt::format("{} (in {})", d, c.name)});
        continue;
      }
      auto& list = owners[d];
      if (list.empty()) order.push_back(d);
      list.push_back(c.name);
    }
  }
  for (const std::string& d : order) {
    const auto& list = owners[d];
    if (list.size() > 1) {
      report.issues.push_back({IssueKind::kDuplicateDevice,
                               fmt::format("{} in {}", d, fmt::join(list, ","))});
    }
  }
  return report;
}

const ClusterScore* ScoreBreakdown::find(std::string_view name) const {
  auto it = std::find_if(per_cluster.begin(), per_cluster.end(),
                         [&](const ClusterScore& s) { return s.name == name; });
  return it == per_cluster.end() ? nullptr : &*it;
}

namespace {

struct KindCount {
  int pmos = 0;
  int nmos = 0;
};

ClusterScore score_one(const Netlist& netlist, const Cluster& cluster,
                       const ScoreOptions& options) {
  std::map<std::string_view, KindCount> diffusion;
  std::map<std::string_view, KindCount> gate;
  for (const std::string& name : cluster.devices) {
    const Mosfet& m = netlist.device(name);
    for (Terminal t : kTerminals) {
      KindCount& k = is_diffusion(t) ? diffusion[m.net(t)] : gate[m.net(t)];
      ++(m.kind == DeviceKind::kPmos ? k.pmos : k.nmos);
    }
  }
  auto excluded = [&](std::string_view net) {
    return std::find(options.excluded_nets.begin(),
                     options.excluded_nets.end(),
                     net) != options.excluded_nets.end();
  };
  ClusterScore s;
  s.name = cluster.name;
  s.device_count = static_cast<int>(cluster.devices.size());
  for (const auto& [net, k] : diffusion) {
    if (!excluded(net)) s.diffusion_pairs += k.pmos / 2 + k.nmos / 2;
  }
  for (const auto& [net, k] : gate) {
    if (!excluded(net)) s.common_gates += std::min(k.pmos, k.nmos);
  }
  s.contribution = static_cast<double>(s.diffusion_pairs + s.common_gates) /
                   static_cast<double>(s.device_count);
  return s;
}

}  // namespace

ScoreBreakdown cluster_score(const Netlist& netlist,
                             const ClusterConstraints& constraints,
                             const ScoreOptions& options) {
  ValidationReport report = validate_constraints(netlist, constraints);
  if (!report.valid()) throw ValidationError(std::move(report));

  ScoreBreakdown out;
  std::vector<double> contributions;
  for (const Cluster& c : constraints.clusters) {
    out.per_cluster.push_back(score_one(netlist, c, options));
    contributions.push_back(out.per_cluster.back().contribution);
  }
  std::sort(contributions.begin(), contributions.end());
  for (double v : contributions) out.total += v;
  return out;
}

int shared_net_count(const Netlist& netlist, std::string_view device,
                     std::span<const std::string> members) {
  const Mosfet& self = netlist.device(device);
  std::unordered_set<std::string> member_nets;
  for (const std::string& name : members) {
    const Mosfet& m = netlist.device(name);
    if (m.name == self.name) continue;
    for (Terminal t : kTerminals) member_nets.insert(m.net(t));
  }
  int shared = 0;
  for (const std::string& net : nets_of(self)) {
    if (member_nets.count(net) != 0) ++shared;
  }
  return shared;
}

ClusterConstraints merge_cluster(const Netlist& netlist,
                                 const ClusterConstraints& current,
                                 std::span<const std::string> new_members) {
  if (new_members.empty()) throw MergeError("no devices given");
  std::vector<std::string> unknown;
  for (const std::string& d : new_members) {
    if (netlist.find(d) == nullptr &&
        std::find(unknown.begin(), unknown.end(), d) == unknown.end()) {
      unknown.push_back(d);
    }
  }
  if (!unknown.empty()) {
    throw LookupError(
        fmt::format("unknown devices: {}", fmt::join(unknown, ", ")));
  }
  ValidationReport report = validate_constraints(netlist, current);
  if (!report.valid()) throw ValidationError(std::move(report));

  std::vector<std::string> fresh;
  for (const std::string& d : new_members) {
    if (std::find(fresh.begin(), fresh.end(), d) == fresh.end()) {
      fresh.push_back(d);
    }
  }

  std::unordered_map<std::string_view, std::size_t> owner;
  for (std::size_t i = 0; i < current.clusters.size(); ++i) {
    for (const std::string& d : current.clusters[i].devices) owner[d] = i;
  }

  // Decide every duplicate against the pre-merge memberships.
  std::unordered_set<std::string> moved;
  std::vector<std::string> kept_in_new;
  for (const std::string& d : fresh) {
    auto it = owner.find(d);
    if (it == owner.end()) {
      kept_in_new.push_back(d);
      continue;
    }
    const int existing =
        shared_net_count(netlist, d, current.clusters[it->second].devices);
    const int proposed = shared_net_count(netlist, d, fresh);
    if (proposed > existing) {
      moved.insert(d);
      kept_in_new.push_back(d);
    }
  }
  if (kept_in_new.empty()) throw MergeError("merge produced empty cluster");

  std::size_t k = current.size() + 1;
  while (current.find(fmt::format("cluster_{}", k)) != nullptr) ++k;

  ClusterConstraints out;
  for (const Cluster& c : current.clusters) {
    Cluster kept{c.name, {}};
    for (const std::string& d : c.devices) {
      if (moved.count(d) == 0) kept.devices.push_back(d);
    }
    if (!kept.devices.empty()) out.clusters.push_back(std::move(kept));
  }
  out.clusters.push_back(
      Cluster{fmt::format("cluster_{}", k), std::move(kept_in_new)});
  return out;
}

nlohmann::ordered_json constraints_to_json(const ClusterConstraints& c) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const Cluster& cluster : c.clusters) j[cluster.name] = cluster.devices;
  return j;
}

nlohmann::ordered_json constraints_to_blob(const ClusterConstraints& c) {
  nlohmann::ordered_json j;
  j["action"] = "Final Answer";
  j["action_input"] = constraints_to_json(c);
  return j;
}

std::string render_constraints_blob(const ClusterConstraints& c) {
  return constraints_to_blob(c).dump(2);
}

ClusterConstraints constraints_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object()) throw ParseError("cluster constraints must be an object");
  const nlohmann::ordered_json* map = &j;
  if (j.contains("action")) {
    if (!j["action"].is_string() || j["action"] != "Final Answer") {
      throw ParseError("constraints blob must have action \"Final Answer\"");
    }
    if (!j.contains("action_input") || !j["action_input"].is_object()) {
      throw ParseError("constraints blob needs an action_input object");
    }
    map = &j["action_input"];
  }
  ClusterConstraints out;
  for (const auto& [name, devices] : map->items()) {
    if (!devices.is_array()) {
      throw ParseError(
          fmt::format("cluster '{}' must be a list of device names", name));
    }
    Cluster c{name, {}};
    for (const auto& d : devices) {
      if (!d.is_string()) {
        throw ParseError(
            fmt::format("cluster '{}' must be a list of device names", name));
      }
      c.devices.push_back(d.get<std::string>());
    }
    out.clusters.push_back(std::move(c));
  }
  return out;
}

ClusterConstraints parse_constraints(std::string_view text) {
  return constraints_from_json(detail::parse_json_strict(text));
}

ClusterConstraints read_constraints_file(const std::filesystem::path& path) {
  return parse_constraints(detail::read_file(path));
}

}  // namespace cellclust
