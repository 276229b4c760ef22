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

// Test-side reference implementations. They are written from the rules
// directly, share no code with the library and favour obviousness over
// speed.

#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cellclust/cluster.hpp"
#include "cellclust/netlist.hpp"

namespace cellclust::testing {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(CELLCLUST_FIXTURES_DIR) / name;
}

inline std::filesystem::path goldens_dir() {
  return std::filesystem::path(CELLCLUST_GOLDENS_DIR);
}

/// Exact non-negative fraction.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  void reduce() {
    const std::int64_t g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  Rational& operator+=(const Rational& o) {
    num = num * o.den + o.num * den;
    den *= o.den;
    reduce();
    return *this;
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational& o) const { return num * o.den == o.num * den; }
};

/// The cluster score of one cluster, counted terminal by terminal.
inline Rational oracle_cluster_contribution(const Netlist& netlist,
                                            const std::vector<std::string>& members) {
  std::map<std::string, int> diff_p, diff_n, gate_p, gate_n;
  for (const std::string& name : members) {
    const Mosfet& m = *netlist.find(name);
    const bool p = m.kind == DeviceKind::kPmos;
    (p ? diff_p : diff_n)[m.drain] += 1;
    (p ? diff_p : diff_n)[m.source] += 1;
    (p ? gate_p : gate_n)[m.gate] += 1;
  }
  std::int64_t pairs = 0;
  for (const auto& [net, count] : diff_p) pairs += count / 2;
  for (const auto& [net, count] : diff_n) pairs += count / 2;
  std::int64_t gates = 0;
  for (const auto& [net, p] : gate_p) {
    auto it = gate_n.find(net);
    if (it != gate_n.end()) gates += std::min(p, it->second);
  }
  Rational r{pairs + gates, static_cast<std::int64_t>(members.size())};
  r.reduce();
  return r;
}

inline Rational oracle_score(const Netlist& netlist, const ClusterConstraints& c) {
  Rational total;
  for (const Cluster& cl : c.clusters) {
    total += oracle_cluster_contribution(netlist, cl.devices);
  }
  return total;
}

/// Distinct nets of `device` seen on any terminal of `others` (excluding
/// `device` itself).
inline int oracle_shared_nets(const Netlist& netlist, const std::string& device,
                              const std::vector<std::string>& others) {
  const Mosfet& d = *netlist.find(device);
  std::set<std::string> mine = {d.drain, d.gate, d.source};
  std::set<std::string> theirs;
  for (const std::string& o : others) {
    if (o == device) continue;
    const Mosfet& m = *netlist.find(o);
    theirs.insert({m.drain, m.gate, m.source});
  }
  int n = 0;
  for (const std::string& net : mine) n += theirs.count(net) ? 1 : 0;
  return n;
}

/// Random netlist with `devices` MOSFETs over nets N0..N<nets-1>.
inline Netlist random_netlist(std::mt19937_64& rng, int devices, int nets) {
  std::uniform_int_distribution<int> pick_net(0, nets - 1);
  std::bernoulli_distribution pmos(0.5);
  std::vector<Mosfet> out;
  for (int i = 0; i < devices; ++i) {
    auto net = [&] { return "N" + std::to_string(pick_net(rng)); };
    Mosfet m;
    m.name = "m" + std::to_string(i);
    m.drain = net();
    m.gate = net();
    m.source = net();
    m.kind = pmos(rng) ? DeviceKind::kPmos : DeviceKind::kNmos;
    out.push_back(std::move(m));
  }
  return Netlist("random", std::move(out));
}

/// Random valid constraints: every device lands in one of up to `max_clusters`
/// clusters or in none.
inline ClusterConstraints random_partition(std::mt19937_64& rng, const Netlist& netlist,
                                           int max_clusters) {
  std::uniform_int_distribution<int> pick(-1, max_clusters - 1);
  std::vector<std::vector<std::string>> groups(static_cast<std::size_t>(max_clusters));
  for (const Mosfet& m : netlist.devices()) {
    const int g = pick(rng);
    if (g >= 0) groups[static_cast<std::size_t>(g)].push_back(m.name);
  }
  ClusterConstraints c;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (!groups[i].empty()) c.clusters.push_back({"g" + std::to_string(i), groups[i]});
  }
  return c;
}

/// Every set partition of `items` (restricted growth strings).
inline std::vector<std::vector<std::vector<std::string>>> all_partitions(
    const std::vector<std::string>& items) {
  std::vector<std::vector<std::vector<std::string>>> out;
  const std::size_t n = items.size();
  std::vector<int> a(n, 0);
  while (true) {
    int blocks = 0;
    for (int v : a) blocks = std::max(blocks, v + 1);
    std::vector<std::vector<std::string>> part(static_cast<std::size_t>(blocks));
    for (std::size_t i = 0; i < n; ++i) part[static_cast<std::size_t>(a[i])].push_back(items[i]);
    out.push_back(std::move(part));
    // Next restricted growth string.
    std::size_t i = n;
    while (i-- > 1) {
      int max_prefix = 0;
      for (std::size_t j = 0; j < i; ++j) max_prefix = std::max(max_prefix, a[j]);
      if (a[i] <= max_prefix) {
        ++a[i];
        std::fill(a.begin() + static_cast<std::ptrdiff_t>(i) + 1, a.end(), 0);
        break;
      }
    }
    if (i == 0) break;
  }
  return out;
}

/// Best cluster score over every way of clustering the netlist. Leaving a
/// device out never helps (contributions are non-negative), so partitions of
/// the whole device set suffice.
inline Rational brute_force_optimum(const Netlist& netlist) {
  std::vector<std::string> names;
  for (const Mosfet& m : netlist.devices()) names.push_back(m.name);
  Rational best;
  for (const auto& part : all_partitions(names)) {
    Rational total;
    for (const auto& block : part) total += oracle_cluster_contribution(netlist, block);
    if (best.value() < total.value()) best = total;
  }
  return best;
}

}  // namespace cellclust::testing
