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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cellclust/agent.hpp"
#include "cellclust/cluster.hpp"
#include "cellclust/io.hpp"
#include "cellclust/layout.hpp"
#include "cellclust/netlist.hpp"
#include "cellclust/optimize.hpp"
#include "cellclust/tools.hpp"
#include "cli/goldens.hpp"
#include "oracle.hpp"

namespace cellclust::acceptance {
namespace {

namespace fs = std::filesystem;
using testing::fixture;

struct Verdict {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Verdict score_matches_oracle() {
  Verdict v;
  const auto start = Clock::now();
  std::mt19937_64 rng(20260101);
  std::uniform_int_distribution<int> devices(1, 12), nets(1, 8), clusters(1, 5);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Netlist n = testing::random_netlist(rng, devices(rng), nets(rng));
    const ClusterConstraints c = testing::random_partition(rng, n, clusters(rng));
    const double got = cluster_score(n, c).total;
    const double err = std::abs(got - testing::oracle_score(n, c).value());
    worst = std::max(worst, err);
    if (err > 1e-12) v.fail("case " + std::to_string(i) + " differs by " + std::to_string(err));
  }
  const double t = seconds_since(start);
  if (t >= 5.0) v.fail("took " + std::to_string(t) + " s");
  if (v.pass) {
    std::ostringstream s;
    s << "200 cases, max error " << worst << ", " << t << " s";
    v.detail = s.str();
  }
  return v;
}

Verdict nand2_worked_examples() {
  Verdict v;
  const Netlist n = read_netlist_file(fixture("nand2.net"));
  const double one =
      cluster_score(n, read_constraints_file(fixture("nand2_one_cluster.json"))).total;
  const double two =
      cluster_score(n, read_constraints_file(fixture("nand2_two_clusters.json"))).total;
  if (one != 1.25) v.fail("one cluster scored " + std::to_string(one));
  if (two != 1.0) v.fail("two clusters scored " + std::to_string(two));
  if (v.pass) v.detail = "1.25 and 1.0";
  return v;
}

Verdict merge_duplicate_resolution() {
  Verdict v;
  std::mt19937_64 rng(7);
  int merged = 0, refused = 0;
  for (int i = 0; i < 200; ++i) {
    const Netlist n = testing::random_netlist(rng, 2 + static_cast<int>(rng() % 11),
                                              1 + static_cast<int>(rng() % 8));
    const ClusterConstraints before = testing::random_partition(rng, n, 3);
    std::vector<std::string> members;
    for (const Mosfet& m : n.devices()) {
      if (rng() % 2 == 0) members.push_back(m.name);
    }
    if (members.empty()) members.push_back(n.devices()[0].name);

    // Expected placement from an exhaustive recount.
    std::set<std::string> expect_new;
    for (const std::string& d : members) {
      const Cluster* home = nullptr;
      for (const Cluster& c : before.clusters) {
        if (std::find(c.devices.begin(), c.devices.end(), d) != c.devices.end()) home = &c;
      }
      if (home == nullptr || testing::oracle_shared_nets(n, d, members) >
                                 testing::oracle_shared_nets(n, d, home->devices)) {
        expect_new.insert(d);
      }
    }
    const std::string tag = "case " + std::to_string(i) + ": ";
    ClusterConstraints after;
    try {
      after = merge_cluster(n, before, members);
    } catch (const MergeError&) {
      ++refused;
      if (!expect_new.empty()) v.fail(tag + "refused a non-empty merge");
      continue;
    }
    ++merged;
    if (!validate_constraints(n, after).valid()) {
      v.fail(tag + "result is not valid");
      continue;
    }
    const Cluster& fresh = after.clusters.back();
    const std::set<std::string> got(fresh.devices.begin(), fresh.devices.end());
    if (got != expect_new) v.fail(tag + "new cluster membership differs from recount");
    // Devices not moved stay where they were.
    for (const Cluster& c : before.clusters) {
      for (const std::string& d : c.devices) {
        if (got.count(d)) continue;
        const Cluster* now = after.find(c.name);
        if (now == nullptr ||
            std::find(now->devices.begin(), now->devices.end(), d) == now->devices.end()) {
          v.fail(tag + d + " left its cluster");
        }
      }
    }
  }
  if (v.pass) {
    v.detail = std::to_string(merged) + " merges, " + std::to_string(refused) +
               " correctly refused";
  }
  return v;
}

Verdict sa_recovers_optimum() {
  Verdict v;
  const auto netlist = std::make_shared<const Netlist>(read_netlist_file(fixture("inv4.net")));
  const double optimum = testing::brute_force_optimum(*netlist).value();
  if (optimum != 2.0) v.fail("brute-force optimum is " + std::to_string(optimum));
  const auto start = Clock::now();
  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SAConfig cfg;
    cfg.seed = seed;
    if (run_sa(Session(netlist), cfg).best_score.total == optimum) ++hits;
  }
  const double t = seconds_since(start);
  std::ostringstream s;
  s << hits << "/20 seeds reached the brute-force optimum " << optimum << ", " << t << " s";
  if (hits < 19 || t >= 30.0) v.fail(s.str());
  if (v.pass) v.detail = s.str();
  return v;
}

Verdict lam_schedule() {
  Verdict v;
  if (lam_target(0, 2000) != 1.0) v.fail("target at iteration 0 is not 1.0");
  for (int i = 300; i <= 1300; ++i) {
    if (lam_target(i, 2000) != 0.44) v.fail("plateau value at " + std::to_string(i));
  }
  const int total = 20000;
  LamSchedule s(0.5, total);
  Rng rng(5);
  int accepted = 0, counted = 0;
  for (int i = 0; i < total; ++i) {
    const bool ok = s.accepts(2.0 * rng.uniform01() - 1.0, rng);
    const double p = static_cast<double>(i) / total;
    if (p >= 0.15 && p <= 0.65) {
      accepted += ok ? 1 : 0;
      ++counted;
    }
    s.record(ok);
  }
  const double rate = static_cast<double>(accepted) / counted;
  if (std::abs(rate - 0.44) > 0.08) v.fail("plateau acceptance rate " + std::to_string(rate));
  if (v.pass) v.detail = "plateau acceptance rate " + std::to_string(rate);
  return v;
}

Verdict react_determinism() {
  Verdict v;
  const auto netlist = std::make_shared<const Netlist>(read_netlist_file(fixture("nand2.net")));
  AgentConfig cfg;
  cfg.retry.sleep = [](std::chrono::milliseconds) {};
  for (const char* name :
       {"transcript_final.jsonl", "transcript_cap.jsonl", "transcript_recover.jsonl"}) {
    std::string first;
    for (int run = 0; run < 2; ++run) {
      Session s(netlist);
      ScriptedBackend backend(read_transcript_file(fixture(name)));
      const AgentTrace t = run_agent(s, backend, cfg, GuidanceConfig{});
      const std::string text = serialize_trace(t);
      if (run == 0) {
        first = text;
      } else if (text != first) {
        v.fail(std::string(name) + " traces differ");
      }
      if (std::string(name) == "transcript_cap.jsonl" &&
          (t.outcome != AgentOutcome::kIterationCap || t.steps.size() != 15)) {
        v.fail("cap fixture stopped after " + std::to_string(t.steps.size()) + " steps");
      }
    }
  }
  if (v.pass) v.detail = "3 transcripts, cap fixture stops at step 15";
  return v;
}

Verdict prompt_goldens() {
  Verdict v;
  const fs::path fresh = fs::temp_directory_path() / "cellclust_acceptance_goldens";
  fs::remove_all(fresh);
  const std::vector<std::string> names = cli::bless_golden_corpus(fixture(""), fresh);
  for (const std::string& name : names) {
    const fs::path committed = testing::goldens_dir() / name;
    if (!fs::exists(committed)) {
      v.fail(name + " is not committed");
    } else if (read_text_file(committed) != read_text_file(fresh / name)) {
      v.fail(name + " differs");
    }
  }
  fs::remove_all(fresh);
  if (v.pass) v.detail = std::to_string(names.size()) + " golden files byte-equal";
  return v;
}

Verdict replay_fixture() {
  Verdict v;
  const auto netlist = std::make_shared<const Netlist>(read_netlist_file(fixture("nand2.net")));
  const std::vector<LogRecord> log =
      parse_session_log(read_text_file(fixture("nand2_session.jsonl")));
  const ReplayResult ok = replay_session_log(Session(netlist), log);
  if (!ok.pass) v.fail("fixture log: " + ok.detail);
  for (std::size_t k = 0; k < log.size(); ++k) {
    std::vector<LogRecord> mutated = log;
    mutated[k].observation += "!";
    const ReplayResult r = replay_session_log(Session(netlist), mutated);
    if (r.pass || r.divergent_step != k + 1) {
      v.fail("mutation of record " + std::to_string(k + 1) + " not reported there");
    }
  }
  if (v.pass) {
    v.detail = std::to_string(log.size()) + " records replay; every single-record "
               "mutation fails at its own step";
  }
  return v;
}

Verdict round_trips() {
  Verdict v;
  int checked = 0;
  auto check = [&](const std::string& name, const std::function<std::string(const std::string&)>& rt) {
    const std::string text = read_text_file(fixture(name));
    std::string again;
    try {
      again = rt(text);
    } catch (const std::exception& e) {
      v.fail(name + ": " + e.what());
      return;
    }
    if (again != text) v.fail(name + " does not round-trip");
    ++checked;
  };
  for (const char* n : {"nand2.net", "inv.net", "inv4.net"}) {
    check(n, [](const std::string& t) { return serialize_netlist(parse_netlist(t)); });
  }
  for (const char* n : {"toy_layout.json", "nand2_layout.json"}) {
    check(n, [](const std::string& t) { return serialize_layout(parse_layout(t)); });
  }
  for (const char* n : {"seq_routability.json", "inv_routability.json", "nand2_routability.json"}) {
    check(n, [](const std::string& t) { return serialize_routability(parse_routability(t)); });
  }
  for (const char* n : {"nand2_one_cluster.json", "nand2_two_clusters.json"}) {
    check(n, [](const std::string& t) { return render_constraints_blob(parse_constraints(t)) + "\n"; });
  }
  if (v.pass) v.detail = std::to_string(checked) + " fixtures";
  return v;
}

}  // namespace
}  // namespace cellclust::acceptance

int main() {
  using namespace cellclust::acceptance;
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"score matches brute-force oracle", score_matches_oracle},
      {"nand2 worked examples", nand2_worked_examples},
      {"merge duplicate resolution", merge_duplicate_resolution},
      {"SA recovers inverter-pair optimum", sa_recovers_optimum},
      {"modified Lam schedule", lam_schedule},
      {"ReAct determinism and iteration cap", react_determinism},
      {"prompt goldens", prompt_goldens},
      {"session log replay", replay_fixture},
      {"fixture round-trips", round_trips},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": "
              << criteria[i].first << " (" << v.detail << ")\n";
    failures += v.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
