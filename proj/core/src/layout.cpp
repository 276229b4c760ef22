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

#include <algorithm>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "cellclust/error.hpp"
#include "json_util.hpp"
#include "text_util.hpp"

namespace cellclust {

using nlohmann::ordered_json;

Layout::Layout(std::string cell, int columns, int rows,
               std::map<Coord, PlacedSite> sites)
    : cell_(std::move(cell)),
      columns_(columns),
      rows_(rows),
      sites_(std::move(sites)) {
  if (columns_ < 0 || rows_ < 0) {
    throw Error(fmt::format("negative layout dimensions {}x{}", columns_,
                            rows_));
  }
  for (const auto& [c, site] : sites_) {
    if (!in_bounds(c)) {
      throw Error(fmt::format("coordinate out of bounds: (x={}, y={}) in a "
                              "{}x{} grid",
                              c.x, c.y, columns_, rows_));
    }
  }
}

bool Layout::in_bounds(Coord c) const {
  return c.x >= 0 && c.x < columns_ && c.y >= 0 && c.y < rows_;
}

const PlacedSite* Layout::at(Coord c) const {
  auto it = sites_.find(c);
  return it == sites_.end() ? nullptr : &it->second;
}

void check_layout_against(const Layout& layout, const Netlist& netlist) {
  for (const auto& [c, site] : layout.sites()) {
    const Mosfet* m = netlist.find(site.device);
    if (m == nullptr) {
      throw Error(fmt::format("site (x={}, y={}) names unknown device {}", c.x,
                              c.y, site.device));
    }
    if (m->net(site.terminal) != site.net) {
      throw Error(fmt::format(
          "site contradicts netlist: (x={}, y={}) puts net {} on {}.{} but the "
          "netlist has {}",
          c.x, c.y, site.net, site.device, terminal_letter(site.terminal),
          m->net(site.terminal)));
    }
  }
}

namespace {

bool is_dummy_name(const std::string& s) {
  return s == "dummy" || s == "DUMMY";
}

int get_int(const ordered_json& j, const char* key, std::string_view what) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw ParseError(fmt::format("{}: '{}' must be an integer", what, key));
  }
  return j[key].get<int>();
}

std::string get_string(const ordered_json& j, const char* key,
                       std::string_view what) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw ParseError(fmt::format("{}: '{}' must be a string", what, key));
  }
  return j[key].get<std::string>();
}

}  // namespace

Layout parse_layout(std::string_view text, const Netlist* netlist) {
  ordered_json j = detail::parse_json_strict(text);
  if (!j.is_object()) throw ParseError("layout must be a JSON object");
  std::string cell;
  if (j.contains("cell")) cell = get_string(j, "cell", "layout");
  const int columns = get_int(j, "columns", "layout");
  const int rows = get_int(j, "rows", "layout");
  if (!j.contains("sites") || !j["sites"].is_array()) {
    throw ParseError("layout: 'sites' must be a list");
  }
  std::map<Coord, PlacedSite> placed;
  std::set<Coord> seen;
  for (const ordered_json& s : j["sites"]) {
    if (!s.is_object()) throw ParseError("layout: site must be an object");
    Coord c{get_int(s, "x", "site"), get_int(s, "y", "site")};
    const std::string where = fmt::format("site (x={}, y={})", c.x, c.y);
    if (c.x < 0 || c.x >= columns || c.y < 0 || c.y >= rows) {
      throw ParseError(fmt::format("coordinate out of bounds: {} in a {}x{} "
                                   "grid",
                                   where, columns, rows));
    }
    if (!seen.insert(c).second) {
      throw ParseError(fmt::format("duplicate coordinate: {}", where));
    }
    std::string net = get_string(s, "net", where);
    std::string device = get_string(s, "device", where);
    const bool has_terminal = s.contains("terminal") && !s["terminal"].is_null();
    const bool dummy_net = is_dummy_name(net);
    const bool dummy_device = is_dummy_name(device);
    if (dummy_net || dummy_device || !has_terminal) {
      if (!(dummy_net && dummy_device && !has_terminal)) {
        throw ParseError(fmt::format(
            "{}: net, device and terminal must all be dummy or all be set",
            where));
      }
      continue;
    }
    std::string letter = get_string(s, "terminal", where);
    auto terminal = terminal_from_letter(letter);
    if (!terminal) {
      throw ParseError(
          fmt::format("{}: terminal must be s, d or g, got '{}'", where, letter));
    }
    if (!is_valid_identifier(net) || !is_valid_identifier(device)) {
      throw ParseError(fmt::format("{}: invalid net or device name", where));
    }
    placed.emplace(c, PlacedSite{std::move(net), std::move(device), *terminal});
  }
  Layout layout(std::move(cell), columns, rows, std::move(placed));
  if (netlist != nullptr) check_layout_against(layout, *netlist);
  return layout;
}

Layout read_layout_file(const std::filesystem::path& path,
                        const Netlist* netlist) {
  return parse_layout(detail::read_file(path), netlist);
}

std::string serialize_layout(const Layout& layout) {
  ordered_json j;
  j["cell"] = layout.cell();
  j["columns"] = layout.columns();
  j["rows"] = layout.rows();
  j["sites"] = ordered_json::array();
  for (const auto& [c, site] : layout.sites()) {
    ordered_json s;
    s["x"] = c.x;
    s["y"] = c.y;
    s["net"] = site.net;
    s["device"] = site.device;
    s["terminal"] = std::string(terminal_letter(site.terminal));
    j["sites"].push_back(std::move(s));
  }
  return j.dump(2) + "\n";
}

std::set<std::string> diffusion_break_adjacent_nets(const Layout& layout) {
  std::set<std::string> out;
  auto dummy = [&](Coord c) {
    return layout.in_bounds(c) && layout.at(c) == nullptr;
  };
  for (const auto& [c, site] : layout.sites()) {
    if (!is_diffusion(site.terminal)) continue;
    if (dummy({c.x - 1, c.y}) || dummy({c.x + 1, c.y})) out.insert(site.net);
  }
  return out;
}

RoutabilityReport parse_routability(std::string_view text,
                                    const Netlist* netlist) {
  ordered_json j = detail::parse_json_strict(text);
  if (!j.is_object() || !j.contains("unrouted") || !j["unrouted"].is_array()) {
    throw ParseError("routability report needs an 'unrouted' list");
  }
  RoutabilityReport report;
  for (const ordered_json& e : j["unrouted"]) {
    if (!e.is_object()) throw ParseError("unrouted entry must be an object");
    UnroutedNet u;
    u.net = get_string(e, "net", "unrouted entry");
    const std::string where = "unrouted net " + u.net;
    const char* pairs_key = e.contains("terminal_x_pairs") ? "terminal_x_pairs"
                                                           : "pairs";
    const char* devices_key =
        e.contains("region_devices") ? "region_devices" : "devices";
    if (e.contains(pairs_key)) {
      if (!e[pairs_key].is_array()) {
        throw ParseError(where + ": terminal_x_pairs must be a list");
      }
      for (const ordered_json& p : e[pairs_key]) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() ||
            !p[1].is_number_integer()) {
          throw ParseError(where + ": each pair must be [x1, x2]");
        }
        const int x1 = p[0].get<int>();
        const int x2 = p[1].get<int>();
        if (x1 > x2) {
          throw ParseError(fmt::format("{}: x1 > x2 in pair [{}, {}]", where,
                                       x1, x2));
        }
        u.terminal_x_pairs.emplace_back(x1, x2);
      }
    }
    if (e.contains(devices_key)) {
      if (!e[devices_key].is_array()) {
        throw ParseError(where + ": region_devices must be a list");
      }
      for (const ordered_json& d : e[devices_key]) {
        if (!d.is_string()) {
          throw ParseError(where + ": region_devices must be strings");
        }
        u.region_devices.push_back(d.get<std::string>());
      }
    }
    if (netlist != nullptr) {
      if (!netlist->has_net(u.net)) {
        throw Error(fmt::format("unknown net in routability report: {}", u.net));
      }
      for (const std::string& d : u.region_devices) {
        if (netlist->find(d) == nullptr) {
          throw Error(
              fmt::format("unknown device in routability report: {}", d));
        }
      }
    }
    report.unrouted.push_back(std::move(u));
  }
  return report;
}

RoutabilityReport read_routability_file(const std::filesystem::path& path,
                                        const Netlist* netlist) {
  return parse_routability(detail::read_file(path), netlist);
}

std::string serialize_routability(const RoutabilityReport& report) {
  ordered_json j;
  j["unrouted"] = ordered_json::array();
  for (const UnroutedNet& u : report.unrouted) {
    ordered_json e;
    e["net"] = u.net;
    e["terminal_x_pairs"] = ordered_json::array();
    for (const auto& [x1, x2] : u.terminal_x_pairs) {
      e["terminal_x_pairs"].push_back({x1, x2});
    }
    e["region_devices"] = u.region_devices;
    j["unrouted"].push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

LayoutMetrics parse_metrics(std::string_view text) {
  ordered_json j = detail::parse_json_strict(text);
  if (!j.is_object()) throw ParseError("metrics must be a JSON object");
  LayoutMetrics m;
  for (auto [key, slot] : {std::pair{"cell_width_cpp", &m.cell_width_cpp},
                           std::pair{"total_wirelength", &m.total_wirelength}}) {
    if (!j.contains(key) || !j[key].is_number_integer()) {
      throw ParseError(fmt::format("metrics: '{}' must be an integer", key));
    }
    *slot = j[key].get<std::int64_t>();
    if (*slot < 0) {
      throw ParseError(fmt::format("metrics: '{}' must be >= 0", key));
    }
  }
  return m;
}

LayoutMetrics read_metrics_file(const std::filesystem::path& path) {
  return parse_metrics(detail::read_file(path));
}

std::string serialize_metrics(const LayoutMetrics& metrics) {
  ordered_json j;
  j["cell_width_cpp"] = metrics.cell_width_cpp;
  j["total_wirelength"] = metrics.total_wirelength;
  return j.dump(2) + "\n";
}

}  // namespace cellclust
