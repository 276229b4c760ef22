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

#include <benchmark/benchmark.h>

#include "cellclust/cluster.hpp"
#include "cellclust/netlist.hpp"

namespace cellclust {
namespace {

std::string ChainText(int n) {
  std::string text = "cell chain\n";
  for (int i = 0; i < n; ++i) {
    const std::string in = "N" + std::to_string(i);
    const std::string out = "N" + std::to_string(i + 1);
    text += "mp" + std::to_string(i) + " d:" + out + " g:" + in + " s:VDD pmos\n";
    text += "mn" + std::to_string(i) + " d:" + out + " g:" + in + " s:VSS nmos\n";
  }
  return text;
}

void BM_ParseNetlist(benchmark::State& state) {
  const std::string text = ChainText(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_netlist(text).size());
  }
  state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(text.size()));
}
BENCHMARK(BM_ParseNetlist)->Range(8, 1024);

void BM_ParseConstraints(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ClusterConstraints c;
  for (int i = 0; i < n; ++i) {
    c.clusters.push_back({"c" + std::to_string(i),
                          {"mp" + std::to_string(i), "mn" + std::to_string(i)}});
  }
  const std::string text = render_constraints_blob(c);
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_constraints(text).size());
  }
}
BENCHMARK(BM_ParseConstraints)->Range(8, 512);

}  // namespace
}  // namespace cellclust
