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

// Simulated-annealing baseline over cluster constraints.
//
// Each move samples 1..k_max distinct nets (weighted: unrouted nets and nets
// next to diffusion breaks are favoured), collects the devices on them and
// tentatively merges that group as a new cluster. The move is accepted on
// a non-negative score change, or with probability exp(delta / T)
// otherwise. T follows a modified Lam schedule that steers the smoothed
// acceptance rate towards a target curve: 1.0 falling to 0.44 over the
// first 15% of the run, 0.44 until 65%, then decaying towards 0.001.

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cellclust/cluster.hpp"
#include "cellclust/layout.hpp"
#include "cellclust/netlist.hpp"
#include "cellclust/tools.hpp"

namespace cellclust {

struct SAConfig {
  int total_iterations = 2000;
  int k_max = 3;
  double weight_unrouted = 4.0;
  double weight_diffusion_break = 2.0;
  double initial_temperature = 0.5;
  std::uint64_t seed = 1;

  /// Throws `Error` describing the first violated field constraint.
  void validate() const;
};

/// Missing keys keep their defaults; unknown keys are rejected.
SAConfig sa_config_from_json(const nlohmann::ordered_json& j,
                             SAConfig base = {});
nlohmann::ordered_json sa_config_to_json(const SAConfig& config);

/// Seedable generator with portable draws. The engine is std::mt19937_64,
/// whose output sequence is fixed by the standard; the integer and real
/// draws below are defined here rather than by <random> distributions,
/// which differ between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Seed of run `run` in a batch started from `base`.
  static std::uint64_t stream_seed(std::uint64_t base, std::uint64_t run) {
    return base + run;
  }

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform01();
  /// Uniform in [0, bound); `bound` must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

/// Net weights in netlist net order.
using NetWeights = std::vector<std::pair<std::string, double>>;

/// weight_unrouted for nets listed as unrouted, else weight_diffusion_break
/// for nets next to a dummy site, else 1.
NetWeights net_weights(const Netlist& netlist, const Layout* layout,
                       const RoutabilityReport* routability,
                       const SAConfig& config);

/// Draws `count` distinct indices into `weights`, each draw proportional to
/// weight among the indices not yet drawn. `count` is clamped to the size.
std::vector<std::size_t> sample_nets(const NetWeights& weights, int count,
                                     Rng& rng);

/// Target acceptance rate at `iteration` of `total`. Throws `Error` unless
/// 0 <= iteration < total.
double lam_target(int iteration, int total);

class LamSchedule {
 public:
  static constexpr double kInitialAcceptRate = 0.5;

  LamSchedule(double initial_temperature, int total_iterations);

  double temperature() const { return temperature_; }
  double accept_rate() const { return accept_rate_; }
  int iteration() const { return iteration_; }
  int total_iterations() const { return total_; }

  /// Metropolis rule. Draws from `rng` only when `delta` is negative.
  bool accepts(double delta, Rng& rng) const;
  /// Folds one outcome into the smoothed acceptance rate, moves the
  /// temperature towards the target and advances the iteration.
  void record(bool accepted);

 private:
  double temperature_;
  double accept_rate_ = kInitialAcceptRate;
  int iteration_ = 0;
  int total_;
};

struct SAState {
  Session session;
  LamSchedule schedule;
  double best_score = 0.0;
  int best_iteration = 0;
  int accepted = 0;
  int rejected = 0;

  SAState(Session s, const SAConfig& config);
};

struct StepOutcome {
  std::vector<std::string> sampled_nets;
  std::vector<std::string> members;
  bool merged = false;  // false when merge_cluster refused the group
  double delta = 0.0;
  bool accepted = false;
};

/// One annealing move. Accepted moves go through the save tool, so `log`
/// (when given) receives exactly the accepted calls.
StepOutcome sa_step(SAState& state, const NetWeights& weights,
                    const SAConfig& config, Rng& rng,
                    std::vector<LogRecord>* log = nullptr);

struct SATraceSummary {
  int iterations = 0;
  int accepted = 0;
  int rejected = 0;
  double best_score = 0.0;
  int best_iteration = 0;
  std::uint64_t seed = 0;

  bool operator==(const SATraceSummary&) const = default;
};

nlohmann::ordered_json trace_summary_to_json(const SATraceSummary& summary);

struct SAResult {
  ClusterConstraints best_constraints;
  ScoreBreakdown best_score;
  SATraceSummary summary;
  /// Accepted saves followed by the final get_best_cluster_result call.
  std::vector<LogRecord> log;
};

/// Runs `config.total_iterations` moves from the session's current state and
/// finishes by restoring the best snapshot. Deterministic given the seed.
SAResult run_sa(Session session, const SAConfig& config);

}  // namespace cellclust
