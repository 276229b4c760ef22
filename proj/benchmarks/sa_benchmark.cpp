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

#include <memory>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "cellclust/optimize.hpp"
#include "cellclust/tools.hpp"

namespace cellclust {
namespace {

std::shared_ptr<const Netlist> InverterPairs(int n) {
  std::vector<Mosfet> devices;
  for (int i = 0; i < n; ++i) {
    const std::string s = std::to_string(i);
    devices.push_back({"mp" + s, "OUT" + s, "IN" + s, "VDD" + s, DeviceKind::kPmos});
    devices.push_back({"mn" + s, "OUT" + s, "IN" + s, "VSS" + s, DeviceKind::kNmos});
  }
  return std::make_shared<const Netlist>("pairs", std::move(devices));
}

void BM_RunSa(benchmark::State& state) {
  const auto netlist = InverterPairs(static_cast<int>(state.range(0)));
  SAConfig cfg;
  cfg.total_iterations = 2000;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    cfg.seed = seed++;
    benchmark::DoNotOptimize(run_sa(Session(netlist), cfg).best_score.total);
  }
  state.SetItemsProcessed(state.iterations() * cfg.total_iterations);
}
BENCHMARK(BM_RunSa)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_SampleNets(benchmark::State& state) {
  const auto netlist = InverterPairs(64);
  const NetWeights weights = net_weights(*netlist, nullptr, nullptr, SAConfig{});
  Rng rng(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_nets(weights, 3, rng));
  }
}
BENCHMARK(BM_SampleNets);

}  // namespace
}  // namespace cellclust
