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

// Layout snapshots and routability reports produced by an external layout
// generator. They are ingested and validated here, never produced.

#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cellclust/netlist.hpp"

namespace cellclust {

/// Grid coordinate. x is in half contacted-poly-pitch units, y in half
/// cell-row units. Ordering is column-major: x first, then y.
struct Coord {
  int x = 0;
  int y = 0;

  auto operator<=>(const Coord&) const = default;
};

/// A non-dummy grid site: one terminal of one placed device.
struct PlacedSite {
  std::string net;
  std::string device;
  Terminal terminal = Terminal::kSource;

  bool operator==(const PlacedSite&) const = default;
};

/// Coordinates without a placed site are dummies.
class Layout {
 public:
  /// Throws `Error` for negative dimensions or out-of-bounds sites.
  Layout(std::string cell, int columns, int rows,
         std::map<Coord, PlacedSite> sites);

  const std::string& cell() const { return cell_; }
  int columns() const { return columns_; }
  int rows() const { return rows_; }
  const std::map<Coord, PlacedSite>& sites() const { return sites_; }

  bool in_bounds(Coord c) const;
  /// nullptr for dummy (or out-of-bounds) coordinates.
  const PlacedSite* at(Coord c) const;

  bool operator==(const Layout&) const = default;

 private:
  std::string cell_;
  int columns_ = 0;
  int rows_ = 0;
  std::map<Coord, PlacedSite> sites_;
};

/// Throws `Error` if a site names an unknown device or a net that differs
/// from the device's net at that terminal.
void check_layout_against(const Layout& layout, const Netlist& netlist);

/// Parses the layout JSON document. Sites may be given explicitly as dummies
/// (`"net": "dummy", "device": "dummy"` with no terminal) or simply omitted.
Layout parse_layout(std::string_view text, const Netlist* netlist = nullptr);
Layout read_layout_file(const std::filesystem::path& path,
                        const Netlist* netlist = nullptr);
/// Two-space indented JSON, sites in column-major order, dummies omitted.
std::string serialize_layout(const Layout& layout);

/// Nets on source/drain sites whose left or right neighbour in the same row
/// is a dummy site. Grid edges are not diffusion breaks.
std::set<std::string> diffusion_break_adjacent_nets(const Layout& layout);

struct UnroutedNet {
  std::string net;
  std::vector<std::pair<int, int>> terminal_x_pairs;
  std::vector<std::string> region_devices;

  bool operator==(const UnroutedNet&) const = default;
};

struct RoutabilityReport {
  std::vector<UnroutedNet> unrouted;

  bool operator==(const RoutabilityReport&) const = default;
};

/// Throws `ParseError` for malformed documents and pairs with x1 > x2, and
/// `Error` for nets or devices unknown to `netlist` when it is given.
RoutabilityReport parse_routability(std::string_view text,
                                    const Netlist* netlist = nullptr);
RoutabilityReport read_routability_file(const std::filesystem::path& path,
                                        const Netlist* netlist = nullptr);
std::string serialize_routability(const RoutabilityReport& report);

/// Externally measured layout metrics, attached to reports for comparison.
struct LayoutMetrics {
  std::int64_t cell_width_cpp = 0;
  std::int64_t total_wirelength = 0;

  bool operator==(const LayoutMetrics&) const = default;
};

LayoutMetrics parse_metrics(std::string_view text);
LayoutMetrics read_metrics_file(const std::filesystem::path& path);
std::string serialize_metrics(const LayoutMetrics& metrics);

}  // namespace cellclust
