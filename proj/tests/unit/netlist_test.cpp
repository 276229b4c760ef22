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

#include "cellclust/netlist.hpp"

#include <random>
#include <string>
#include <vector>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "cellclust/error.hpp"
#include "cellclust/io.hpp"
#include "oracle.hpp"

namespace cellclust {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;

constexpr const char kNand2[] =
    "mp1 d:OUT g:A s:VDD pmos\n"
    "mp2 d:OUT g:B s:VDD pmos\n"
    "mn1 d:OUT g:A s:net1 nmos\n"
    "mn2 d:net1 g:B s:VSS nmos\n";

std::string ParseErrorOf(std::string_view text) {
  try {
    parse_netlist(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

TEST(NetlistParse, SingleDeviceLine) {
  const Netlist n = parse_netlist("mp1 d:OUT g:A s:VDD pmos\n");
  ASSERT_EQ(n.size(), 1);
  const Mosfet& m = n.devices()[0];
  EXPECT_EQ(m.name, "mp1");
  EXPECT_EQ(m.drain, "OUT");
  EXPECT_EQ(m.gate, "A");
  EXPECT_EQ(m.source, "VDD");
  EXPECT_EQ(m.kind, DeviceKind::kPmos);
  EXPECT_FALSE(m.bulk.has_value());
}

TEST(NetlistParse, Nand2NetIndex) {
  const Netlist n = parse_netlist(kNand2);
  const auto out = n.terminals_on("OUT");
  EXPECT_THAT(std::vector<TerminalRef>(out.begin(), out.end()),
              ElementsAre(TerminalRef{"mp1", Terminal::kDrain},
                          TerminalRef{"mp2", Terminal::kDrain},
                          TerminalRef{"mn1", Terminal::kDrain}));
  EXPECT_THAT(n.nets(), ElementsAre("OUT", "A", "VDD", "B", "net1", "VSS"));
  EXPECT_EQ(n.net_index(), build_net_index(n.devices()));
}

TEST(NetlistParse, EmptyDocument) {
  EXPECT_EQ(ParseErrorOf(""), "no devices");
  EXPECT_EQ(ParseErrorOf("# only a comment\n\n"), "no devices");
}

TEST(NetlistParse, HeaderCommentsAndAnyTokenOrder) {
  const Netlist n = parse_netlist(
      "* spice-style comment\n"
      "cell inv\n"
      "\n"
      "mp1 s:VDD g:A d:OUT PMOS b:VDD\n"
      "# comment\n"
      "mn1 d:OUT g:A s:VSS Nmos\n");
  EXPECT_EQ(n.cell_name(), "inv");
  EXPECT_EQ(n.device("mp1").drain, "OUT");
  EXPECT_EQ(n.device("mp1").bulk, "VDD");
  EXPECT_EQ(n.device("mn1").kind, DeviceKind::kNmos);
}

TEST(NetlistParse, Errors) {
  EXPECT_EQ(ParseErrorOf("mp1 d:OUT g:A s:VDD pmos\nmp1 d:X g:Y s:Z nmos\n"),
            "line 2: duplicate device name 'mp1' (first seen on line 1)");
  EXPECT_EQ(ParseErrorOf("mp1 d:OUT g:A s:VDD fet\n"),
            "line 1: unknown device kind 'fet'");
  EXPECT_EQ(ParseErrorOf("mp1 d:OUT x:A s:VDD pmos\n"),
            "line 1: malformed token 'x:A'");
  EXPECT_THAT(ParseErrorOf("mn1 d:OUT g:A nmos\n"), HasSubstr("missing"));
  EXPECT_THAT(ParseErrorOf("mn1 d:OUT g:A s:VSS\n"), HasSubstr("no kind"));
  EXPECT_THAT(ParseErrorOf("mn1 d: g:A s:VSS nmos\n"), HasSubstr("line 1"));
}

TEST(NetlistParse, ErrorCarriesLine) {
  try {
    parse_netlist("mp1 d:OUT g:A s:VDD pmos\n\nmn1 d:OUT g:A s:VSS bogus\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(NetlistSerialize, FieldOrder) {
  const Netlist n = parse_netlist(kNand2);
  EXPECT_EQ(serialize_netlist(n), kNand2);
  EXPECT_EQ(format_device(n.devices()[3]), "mn2 d:net1 g:B s:VSS nmos");
}

TEST(NetlistSerialize, RoundTripFixtures) {
  for (const char* name : {"nand2.net", "inv.net", "inv4.net"}) {
    const std::string text = read_text_file(testing::fixture(name));
    const Netlist n = parse_netlist(text);
    EXPECT_EQ(serialize_netlist(n), text) << name;
    EXPECT_EQ(parse_netlist(serialize_netlist(n)), n) << name;
  }
}

TEST(NetlistSerialize, RoundTripRandom) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const Netlist n = testing::random_netlist(rng, 1 + i % 12, 1 + i % 8);
    EXPECT_EQ(parse_netlist(serialize_netlist(n)), n);
    EXPECT_EQ(n.net_index(), build_net_index(n.devices()));
  }
}

TEST(DevicesOnNets, Nand2) {
  const Netlist n = parse_netlist(kNand2);
  const std::vector<std::string> out = {"OUT"};
  EXPECT_THAT(devices_on_nets(n, out), ElementsAre("mp1", "mp2", "mn1"));
  const std::vector<std::string> net1 = {"net1"};
  EXPECT_THAT(devices_on_nets(n, net1), ElementsAre("mn1", "mn2"));
  const std::vector<std::string> both = {"net1", "B"};
  EXPECT_THAT(devices_on_nets(n, both), ElementsAre("mp2", "mn1", "mn2"));
}

TEST(DevicesOnNets, UnknownNets) {
  const Netlist n = parse_netlist(kNand2);
  const std::vector<std::string> nope = {"NOPE"};
  try {
    devices_on_nets(n, nope);
    FAIL();
  } catch (const LookupError& e) {
    EXPECT_STREQ(e.what(), "unknown nets: NOPE");
  }
  EXPECT_THROW(devices_on_nets(n, std::vector<std::string>{}), LookupError);
}

TEST(NetStatistics, Nand2) {
  const NetStats s = net_statistics(parse_netlist(kNand2));
  EXPECT_EQ(s.at("OUT"), (NetCounts{2, 1, 0, 0}));
  EXPECT_EQ(s.at("OUT").degree(), 3);
  EXPECT_EQ(s.at("A"), (NetCounts{0, 0, 1, 1}));
  EXPECT_EQ(s.at("A").degree(), 2);
}

TEST(NetStatistics, DegreesSumToThreePerDevice) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 30; ++i) {
    const Netlist n = testing::random_netlist(rng, 1 + i % 12, 1 + i % 8);
    EXPECT_EQ(net_statistics(n).total_degree(), 3 * static_cast<int>(n.size()));
  }
}

TEST(Netlist, DrainEqualsSourceIsAccepted) {
  const Netlist n = parse_netlist("mc1 d:X g:G s:X nmos\n");
  EXPECT_EQ(net_statistics(n).at("X").diffusion_nmos, 2);
  EXPECT_EQ(n.terminals_on("X").size(), 2);
}

}  // namespace
}  // namespace cellclust
