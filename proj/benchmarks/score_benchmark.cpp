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

#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "cellclust/cluster.hpp"
#include "cellclust/netlist.hpp"

namespace cellclust {
namespace {

// A chain of n inverters: stage i drives N<i+1>.
Netlist InverterChain(int n) {
  std::vector<Mosfet> devices;
  for (int i = 0; i < n; ++i) {
    const std::string in = "N" + std::to_string(i);
    const std::string out = "N" + std::to_string(i + 1);
    devices.push_back({"mp" + std::to_string(i), out, in, "VDD", DeviceKind::kPmos});
    devices.push_back({"mn" + std::to_string(i), out, in, "VSS", DeviceKind::kNmos});
  }
  return Netlist("chain", std::move(devices));
}

ClusterConstraints PairClusters(int n, int pairs_per_cluster) {
  ClusterConstraints c;
  for (int i = 0; i < n; ++i) {
    if (i % pairs_per_cluster == 0) {
      c.clusters.push_back({"c" + std::to_string(i / pairs_per_cluster), {}});
    }
    c.clusters.back().devices.push_back("mp" + std::to_string(i));
    c.clusters.back().devices.push_back("mn" + std::to_string(i));
  }
  return c;
}

void BM_ClusterScore(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Netlist netlist = InverterChain(n);
  const ClusterConstraints c = PairClusters(n, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cluster_score(netlist, c).total);
  }
  state.SetItemsProcessed(state.iterations() * 2 * n);
}
BENCHMARK(BM_ClusterScore)->Range(8, 512);

void BM_MergeCluster(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Netlist netlist = InverterChain(n);
  const ClusterConstraints c = PairClusters(n, 4);
  const std::vector<std::string> members = {"mp1", "mn1", "mp5", "mn5"};
  for (auto _ : state) {
    benchmark::DoNotOptimize(merge_cluster(netlist, c, members));
  }
}
BENCHMARK(BM_MergeCluster)->Range(8, 512);

}  // namespace
}  // namespace cellclust
