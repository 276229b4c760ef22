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

#include "cellclust/optimize.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "cellclust/error.hpp"

namespace cellclust {

using nlohmann::ordered_json;

void SAConfig::validate() const {
  if (total_iterations <= 0) throw Error("total_iterations must be > 0");
  if (k_max < 1) throw Error("k_max must be >= 1");
  if (!(weight_unrouted >= 1.0)) throw Error("weight_unrouted must be >= 1");
  if (!(weight_diffusion_break >= 1.0)) {
    throw Error("weight_diffusion_break must be >= 1");
  }
  if (!(initial_temperature > 0.0) || !std::isfinite(initial_temperature)) {
    throw Error("initial_temperature must be > 0");
  }
}

SAConfig sa_config_from_json(const ordered_json& j, SAConfig base) {
  if (!j.is_object()) throw ParseError("SA config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    auto need_int = [&] {
      if (!value.is_number_integer()) {
        throw ParseError(fmt::format("SA config: '{}' must be an integer", key));
      }
    };
    auto need_number = [&] {
      if (!value.is_number()) {
        throw ParseError(fmt::format("SA config: '{}' must be a number", key));
      }
    };
    if (key == "total_iterations") {
      need_int();
      base.total_iterations = value.get<int>();
    } else if (key == "k_max") {
      need_int();
      base.k_max = value.get<int>();
    } else if (key == "weight_unrouted") {
      need_number();
      base.weight_unrouted = value.get<double>();
    } else if (key == "weight_diffusion_break") {
      need_number();
      base.weight_diffusion_break = value.get<double>();
    } else if (key == "initial_temperature") {
      need_number();
      base.initial_temperature = value.get<double>();
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) {
        throw ParseError("SA config: 'seed' must be a non-negative integer");
      }
      base.seed = value.get<std::uint64_t>();
    } else {
      throw ParseError(fmt::format("SA config: unknown key '{}'", key));
    }
  }
  base.validate();
  return base;
}

ordered_json sa_config_to_json(const SAConfig& config) {
  ordered_json j;
  j["total_iterations"] = config.total_iterations;
  j["k_max"] = config.k_max;
  j["weight_unrouted"] = config.weight_unrouted;
  j["weight_diffusion_break"] = config.weight_diffusion_break;
  j["initial_temperature"] = config.initial_temperature;
  j["seed"] = config.seed;
  return j;
}

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw Error("uniform_below needs a positive bound");
  // Reject the low values that would bias the modulo.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = engine_();
    if (r >= threshold) return r % bound;
  }
}

NetWeights net_weights(const Netlist& netlist, const Layout* layout,
                       const RoutabilityReport* routability,
                       const SAConfig& config) {
  std::set<std::string> unrouted;
  if (routability != nullptr) {
    for (const UnroutedNet& u : routability->unrouted) unrouted.insert(u.net);
  }
  std::set<std::string> breaks;
  if (layout != nullptr) breaks = diffusion_break_adjacent_nets(*layout);

  NetWeights out;
  for (const std::string& net : netlist.nets()) {
    double w = 1.0;
    if (unrouted.count(net) != 0) {
      w = config.weight_unrouted;
    } else if (breaks.count(net) != 0) {
      w = config.weight_diffusion_break;
    }
    out.emplace_back(net, w);
  }
  return out;
}

std::vector<std::size_t> sample_nets(const NetWeights& weights, int count,
                                     Rng& rng) {
  std::vector<std::size_t> remaining(weights.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;
  const auto n = static_cast<std::size_t>(std::max(count, 0));
  std::vector<std::size_t> out;
  while (out.size() < n && !remaining.empty()) {
    double total = 0.0;
    for (std::size_t i : remaining) total += weights[i].second;
    const double u = rng.uniform01() * total;
    double cumulative = 0.0;
    std::size_t pick = remaining.size() - 1;
    for (std::size_t r = 0; r < remaining.size(); ++r) {
      cumulative += weights[remaining[r]].second;
      if (u < cumulative) {
        pick = r;
        break;
      }
    }
    out.push_back(remaining[pick]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return out;
}

double lam_target(int iteration, int total) {
  if (total <= 0 || iteration < 0 || iteration >= total) {
    throw Error(fmt::format("lam_target: iteration {} outside [0, {})",
                            iteration, total));
  }
  const double p = static_cast<double>(iteration) / static_cast<double>(total);
  if (p < 0.15) return 0.44 + 0.56 * std::pow(560.0, -p / 0.15);
  if (p <= 0.65) return 0.44;
  return 0.44 * std::pow(440.0, -(p - 0.65) / 0.35);
}

LamSchedule::LamSchedule(double initial_temperature, int total_iterations)
    : temperature_(initial_temperature), total_(total_iterations) {
  if (!(initial_temperature > 0.0)) throw Error("temperature must be > 0");
  if (total_iterations <= 0) throw Error("total_iterations must be > 0");
}

bool LamSchedule::accepts(double delta, Rng& rng) const {
  if (delta >= 0.0) return true;
  return rng.uniform01() < std::exp(delta / temperature_);
}

void LamSchedule::record(bool accepted) {
  accept_rate_ = (499.0 * accept_rate_ + (accepted ? 1.0 : 0.0)) / 500.0;
  // Past the planned budget the final target keeps applying.
  const int at = std::min(iteration_, total_ - 1);
  const double next = accept_rate_ > lam_target(at, total_)
                          ? temperature_ * 0.999
                          : temperature_ / 0.999;
  if (next > 0.0 && std::isfinite(next)) temperature_ = next;
  ++iteration_;
}

SAState::SAState(Session s, const SAConfig& config)
    : session(std::move(s)),
      schedule(config.initial_temperature, config.total_iterations) {
  best_score = session.history()[session.best_index()].score.total;
}

StepOutcome sa_step(SAState& state, const NetWeights& weights,
                    const SAConfig& config, Rng& rng,
                    std::vector<LogRecord>* log) {
  StepOutcome out;
  const int group =
      1 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(config.k_max)));
  for (std::size_t i : sample_nets(weights, group, rng)) {
    out.sampled_nets.push_back(weights[i].first);
  }
  const Netlist& netlist = state.session.netlist();
  if (!out.sampled_nets.empty()) {
    out.members = devices_on_nets(netlist, out.sampled_nets);
    try {
      ClusterConstraints candidate =
          merge_cluster(netlist, state.session.current(), out.members);
      out.delta = state.session.score(candidate).total -
                  state.session.current_score().total;
      out.merged = true;
    } catch (const Error&) {
      out.merged = false;
    }
  }
  if (out.merged) out.accepted = state.schedule.accepts(out.delta, rng);
  if (out.accepted) {
    ToolCall save{ToolName::kSavePotentialCluster, ordered_json::object()};
    save.arguments["devices"] = out.members;
    const Observation obs = invoke(state.session, save, log);
    if (!obs.ok) throw Error("accepted move failed to save: " + obs.text);
    ++state.accepted;
  } else {
    ++state.rejected;
  }
  state.schedule.record(out.accepted);
  const double now = state.session.current_score().total;
  if (now > state.best_score) {
    state.best_score = now;
    state.best_iteration = state.schedule.iteration();
  }
  return out;
}

ordered_json trace_summary_to_json(const SATraceSummary& summary) {
  ordered_json j;
  j["iterations"] = summary.iterations;
  j["accepted"] = summary.accepted;
  j["rejected"] = summary.rejected;
  j["best_score"] = summary.best_score;
  j["best_iteration"] = summary.best_iteration;
  j["seed"] = summary.seed;
  return j;
}

SAResult run_sa(Session session, const SAConfig& config) {
  config.validate();
  SAResult result;
  SAState state(std::move(session), config);
  const NetWeights weights =
      net_weights(state.session.netlist(), state.session.layout(),
                  state.session.routability(), config);
  Rng rng(config.seed);
  for (int i = 0; i < config.total_iterations; ++i) {
    sa_step(state, weights, config, rng, &result.log);
  }
  invoke(state.session,
         ToolCall{ToolName::kGetBestClusterResult, ordered_json::object()},
         &result.log);
  result.best_constraints = state.session.current();
  result.best_score = state.session.current_score();
  result.summary = SATraceSummary{state.schedule.iteration(), state.accepted,
                                  state.rejected,           state.best_score,
                                  state.best_iteration,     config.seed};
  return result;
}

}  // namespace cellclust
