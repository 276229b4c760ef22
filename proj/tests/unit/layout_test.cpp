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

#include "cellclust/layout.hpp"

#include <map>
#include <random>
#include <set>
#include <string>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "cellclust/error.hpp"
#include "cellclust/io.hpp"
#include "oracle.hpp"

namespace cellclust {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;
using ::testing::IsEmpty;

std::string ErrorOf(std::string_view text, const Netlist* n = nullptr) {
  try {
    parse_layout(text, n);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

TEST(ParseLayout, ToyFixture) {
  const Netlist inv = read_netlist_file(testing::fixture("inv.net"));
  const Layout l = read_layout_file(testing::fixture("toy_layout.json"), &inv);
  EXPECT_EQ(l.columns(), 2);
  EXPECT_EQ(l.rows(), 2);
  EXPECT_EQ(l.sites().size(), 4);
  EXPECT_EQ(*l.at({1, 0}), (PlacedSite{"A", "mp1", Terminal::kGate}));
  EXPECT_EQ(l.at({2, 0}), nullptr);
}

TEST(ParseLayout, ContradictsNetlist) {
  const Netlist inv = read_netlist_file(testing::fixture("inv.net"));
  const std::string text = R"({"columns": 1, "rows": 1, "sites": [
      {"x": 0, "y": 0, "net": "B", "device": "mp1", "terminal": "g"}]})";
  EXPECT_THAT(ErrorOf(text, &inv), HasSubstr("site contradicts netlist"));
  EXPECT_EQ(ErrorOf(text), "");
}

TEST(ParseLayout, AllDummyGrid) {
  const Layout l = parse_layout(R"({"columns": 3, "rows": 2, "sites": [
      {"x": 1, "y": 1, "net": "DUMMY", "device": "DUMMY"}]})");
  EXPECT_THAT(l.sites(), IsEmpty());
  EXPECT_THAT(diffusion_break_adjacent_nets(l), IsEmpty());
}

TEST(ParseLayout, Errors) {
  EXPECT_THAT(ErrorOf(R"({"columns": 1, "rows": 1, "sites": [
      {"x": 1, "y": 0, "net": "A", "device": "m", "terminal": "g"}]})"),
              HasSubstr("coordinate out of bounds"));
  EXPECT_THAT(ErrorOf(R"({"columns": 2, "rows": 1, "sites": [
      {"x": 0, "y": 0, "net": "A", "device": "m", "terminal": "g"},
      {"x": 0, "y": 0, "net": "B", "device": "n", "terminal": "g"}]})"),
              HasSubstr("duplicate coordinate"));
  EXPECT_THAT(ErrorOf(R"({"columns": 1, "rows": 1, "sites": [
      {"x": 0, "y": 0, "net": "A", "device": "m", "terminal": "q"}]})"),
              HasSubstr("terminal"));
  EXPECT_THAT(ErrorOf(R"({"columns": 1, "rows": 1, "sites": [
      {"x": 0, "y": 0, "net": "dummy", "device": "m", "terminal": "s"}]})"),
              HasSubstr("dummy"));
}

TEST(ParseLayout, RoundTripFixtures) {
  for (const char* name : {"toy_layout.json", "nand2_layout.json"}) {
    const std::string text = read_text_file(testing::fixture(name));
    const Layout l = parse_layout(text);
    EXPECT_EQ(serialize_layout(l), text) << name;
    EXPECT_EQ(parse_layout(serialize_layout(l)), l) << name;
  }
}

Layout Row(std::vector<std::optional<PlacedSite>> row) {
  std::map<Coord, PlacedSite> sites;
  for (int x = 0; x < static_cast<int>(row.size()); ++x) {
    if (row[static_cast<std::size_t>(x)]) sites.emplace(Coord{x, 0}, *row[static_cast<std::size_t>(x)]);
  }
  return Layout("row", static_cast<int>(row.size()), 1, std::move(sites));
}

TEST(DiffusionBreaks, DummyBetweenTwoDiffusions) {
  const Layout l = Row({PlacedSite{"X", "m1", Terminal::kDrain}, std::nullopt,
                        PlacedSite{"Y", "m2", Terminal::kSource}});
  EXPECT_THAT(diffusion_break_adjacent_nets(l), ElementsAre("X", "Y"));
}

TEST(DiffusionBreaks, NoDummiesAndEdges) {
  const Layout l = Row({PlacedSite{"X", "m1", Terminal::kDrain},
                        PlacedSite{"G", "m1", Terminal::kGate},
                        PlacedSite{"Y", "m1", Terminal::kSource}});
  EXPECT_THAT(diffusion_break_adjacent_nets(l), IsEmpty());
}

TEST(DiffusionBreaks, GateSitesNeverQualify) {
  const Layout l = Row({PlacedSite{"G", "m1", Terminal::kGate}, std::nullopt,
                        PlacedSite{"H", "m2", Terminal::kGate}});
  EXPECT_THAT(diffusion_break_adjacent_nets(l), IsEmpty());
}

TEST(DiffusionBreaks, Nand2Fixture) {
  const Netlist n = read_netlist_file(testing::fixture("nand2.net"));
  const Layout l = read_layout_file(testing::fixture("nand2_layout.json"), &n);
  const std::set<std::string> nets = diffusion_break_adjacent_nets(l);
  EXPECT_THAT(nets, ElementsAre("VDD", "net1"));
  const NetStats stats = net_statistics(n);
  for (const std::string& net : nets) EXPECT_GT(stats.at(net).diffusion(), 0);
}

TEST(DiffusionBreaks, InvariantUnderRowPermutation) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const int columns = 6, rows = 3;
    std::map<Coord, PlacedSite> sites;
    for (int x = 0; x < columns; ++x) {
      for (int y = 0; y < rows; ++y) {
        if (rng() % 3 == 0) continue;
        const Terminal t = kTerminals[rng() % 3];
        sites.emplace(Coord{x, y}, PlacedSite{"N" + std::to_string(rng() % 4),
                                              "m" + std::to_string(x), t});
      }
    }
    const Layout l("t", columns, rows, sites);
    std::map<Coord, PlacedSite> flipped;
    for (const auto& [c, s] : sites) flipped.emplace(Coord{c.x, rows - 1 - c.y}, s);
    EXPECT_EQ(diffusion_break_adjacent_nets(l),
              diffusion_break_adjacent_nets(Layout("t", columns, rows, flipped)));
    // Dummy-only columns appended on the right: only the old last column can
    // gain a neighbour.
    const Layout wide("t", columns + 3, rows, sites);
    std::set<std::string> base = diffusion_break_adjacent_nets(l);
    std::set<std::string> grown = diffusion_break_adjacent_nets(wide);
    for (const std::string& net : base) EXPECT_TRUE(grown.count(net)) << net;
  }
}

TEST(Routability, SeqFixture) {
  const RoutabilityReport r =
      read_routability_file(testing::fixture("seq_routability.json"));
  ASSERT_EQ(r.unrouted.size(), 1);
  EXPECT_EQ(r.unrouted[0].net, "NET042");
  EXPECT_THAT(r.unrouted[0].terminal_x_pairs, ElementsAre(std::pair{3, 9}));
  EXPECT_THAT(r.unrouted[0].region_devices, ElementsAre("mm7", "mm9"));
}

TEST(Routability, ShortKeysAndEmpty) {
  const RoutabilityReport r = parse_routability(
      R"({"unrouted": [{"net": "NET042", "pairs": [[3, 9]], "devices": ["mm7", "mm9"]}]})");
  EXPECT_EQ(r, read_routability_file(testing::fixture("seq_routability.json")));
  EXPECT_THAT(parse_routability(R"({"unrouted": []})").unrouted, IsEmpty());
}

TEST(Routability, Errors) {
  try {
    parse_routability(R"({"unrouted": [{"net": "N", "pairs": [[9, 3]], "devices": []}]})");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_THAT(e.what(), HasSubstr("x1 > x2"));
  }
  const Netlist n = read_netlist_file(testing::fixture("nand2.net"));
  EXPECT_THROW(
      parse_routability(R"({"unrouted": [{"net": "NET042", "pairs": [], "devices": []}]})", &n),
      Error);
  EXPECT_THROW(
      parse_routability(R"({"unrouted": [{"net": "net1", "pairs": [], "devices": ["mm7"]}]})", &n),
      Error);
}

TEST(Routability, RoundTripFixtures) {
  for (const char* name :
       {"seq_routability.json", "inv_routability.json", "nand2_routability.json"}) {
    const std::string text = read_text_file(testing::fixture(name));
    EXPECT_EQ(serialize_routability(parse_routability(text)), text) << name;
  }
}

TEST(Metrics, RoundTrip) {
  const std::string text = read_text_file(testing::fixture("metrics_a.json"));
  const LayoutMetrics m = parse_metrics(text);
  EXPECT_EQ(m, (LayoutMetrics{5, 42}));
  EXPECT_EQ(serialize_metrics(m), text);
}

}  // namespace
}  // namespace cellclust
