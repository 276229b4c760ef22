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

// Device cluster constraints and the simple cluster score.
//
// For a cluster c with T_c devices the score contribution is
//
//   ( sum over diffusion nets n of floor(P_n/2) + floor(N_n/2)
//   + sum over gate nets n of min(P_n, N_n) ) / T_c
//
// where P_n / N_n count PMOS / NMOS terminal occurrences of net n among the
// cluster's devices (source and drain for diffusion, gate for gates). A
// device whose source and drain sit on the same net contributes two
// occurrences. The cluster score is the sum of contributions; devices
// outside every cluster contribute nothing.

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cellclust/error.hpp"
#include "cellclust/netlist.hpp"

namespace cellclust {

struct Cluster {
  std::string name;
  std::vector<std::string> devices;

  bool operator==(const Cluster&) const = default;
};

/// Named device clusters in insertion order. A value of this type is not
/// necessarily valid; see `validate_constraints`.
struct ClusterConstraints {
  std::vector<Cluster> clusters;

  std::size_t size() const { return clusters.size(); }
  bool empty() const { return clusters.empty(); }
  const Cluster* find(std::string_view name) const;

  bool operator==(const ClusterConstraints&) const = default;
};

enum class IssueKind {
  kUnknownDevice,
  kDuplicateDevice,
  kEmptyCluster,
  kDuplicateClusterName,
};

std::string_view to_string(IssueKind kind);

struct ValidationIssue {
  IssueKind kind;
  std::string detail;

  bool operator==(const ValidationIssue&) const = default;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool valid() const { return issues.empty(); }
  /// One `kind: detail` line per issue.
  std::string to_string() const;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Reports every issue: unknown devices, devices in more than one cluster
/// (or twice in one), empty clusters and repeated cluster names.
ValidationReport validate_constraints(const Netlist& netlist,
                                      const ClusterConstraints& constraints);

struct ClusterScore {
  std::string name;
  int diffusion_pairs = 0;
  int common_gates = 0;
  int device_count = 0;
  double contribution = 0.0;
};

struct ScoreBreakdown {
  double total = 0.0;
  std::vector<ClusterScore> per_cluster;

  const ClusterScore* find(std::string_view name) const;
};

struct ScoreOptions {
  /// Nets ignored by both the diffusion and the gate term. Empty by default,
  /// so power and ground rails are scored like any other net.
  std::vector<std::string> excluded_nets;
};

/// Throws `ValidationError` when `constraints` is not valid for `netlist`.
/// The total is summed over contributions in ascending order so that it does
/// not depend on cluster order or naming.
ScoreBreakdown cluster_score(const Netlist& netlist,
                             const ClusterConstraints& constraints,
                             const ScoreOptions& options = {});

/// Number of distinct nets on `device` that also appear on some terminal of a
/// device in `members` (with `device` itself ignored if listed).
int shared_net_count(const Netlist& netlist, std::string_view device,
                     std::span<const std::string> members);

class MergeError : public Error {
 public:
  using Error::Error;
};

/// Adds `new_members` as a fresh cluster named `cluster_<k>`, k starting at
/// `current.size() + 1` and skipping names already in use.
///
/// A device that already belongs to an existing cluster E moves to the new
/// cluster only if it shares strictly more nets with the other new members
/// than with the rest of E; ties keep it where it was. Both counts are taken
/// against the memberships as they were before the merge. Clusters left
/// empty are dropped. Throws `MergeError` if the new cluster ends up empty,
/// `LookupError` for unknown devices and `ValidationError` if `current` is
/// itself invalid.
ClusterConstraints merge_cluster(const Netlist& netlist,
                                 const ClusterConstraints& current,
                                 std::span<const std::string> new_members);

// JSON interchange: {"action": "Final Answer", "action_input": {...}}. The
// bare {"<cluster>": [...]} form is accepted on read.

nlohmann::ordered_json constraints_to_json(const ClusterConstraints& c);
/// The Final Answer blob.
nlohmann::ordered_json constraints_to_blob(const ClusterConstraints& c);
/// Two-space indented Final Answer blob, no trailing newline.
std::string render_constraints_blob(const ClusterConstraints& c);

/// Accepts either the blob or a bare cluster map. Throws `ParseError`.
ClusterConstraints constraints_from_json(const nlohmann::ordered_json& j);
/// Parses text; repeated keys in any object are rejected.
ClusterConstraints parse_constraints(std::string_view text);
ClusterConstraints read_constraints_file(const std::filesystem::path& path);

}  // namespace cellclust
