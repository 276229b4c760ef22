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

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "cellclust/error.hpp"
#include "text_util.hpp"

namespace cellclust {

std::string_view to_string(DeviceKind kind) {
  return kind == DeviceKind::kPmos ? "pmos" : "nmos";
}

std::string_view terminal_letter(Terminal terminal) {
  switch (terminal) {
    case Terminal::kDrain:
      return "d";
    case Terminal::kGate:
      return "g";
    case Terminal::kSource:
      return "s";
  }
  return "?";
}

std::optional<Terminal> terminal_from_letter(std::string_view letter) {
  if (letter == "d") return Terminal::kDrain;
  if (letter == "g") return Terminal::kGate;
  if (letter == "s") return Terminal::kSource;
  return std::nullopt;
}

bool is_valid_identifier(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '.' || c == '/' || c == ':';
  });
}

const std::string& Mosfet::net(Terminal terminal) const {
  switch (terminal) {
    case Terminal::kDrain:
      return drain;
    case Terminal::kGate:
      return gate;
    case Terminal::kSource:
      return source;
  }
  return drain;
}

NetIndex build_net_index(std::span<const Mosfet> devices) {
  NetIndex index;
  for (const Mosfet& m : devices) {
    for (Terminal t : kTerminals) {
      index[m.net(t)].push_back(TerminalRef{m.name, t});
    }
  }
  return index;
}

Netlist::Netlist(std::string cell_name, std::vector<Mosfet> devices)
    : cell_name_(std::move(cell_name)), devices_(std::move(devices)) {
  if (devices_.empty()) throw Error("no devices");
  if (!cell_name_.empty() && !is_valid_identifier(cell_name_)) {
    throw Error(fmt::format("invalid cell name '{}'", cell_name_));
  }
  std::unordered_set<std::string_view> seen_nets;
  for (std::size_t i = 0; i < devices_.size(); ++i) {
    const Mosfet& m = devices_[i];
    if (!is_valid_identifier(m.name)) {
      throw Error(fmt::format("invalid device name '{}'", m.name));
    }
    for (Terminal t : kTerminals) {
      if (!is_valid_identifier(m.net(t))) {
        throw Error(fmt::format("device {}: invalid {} net '{}'", m.name,
                                terminal_letter(t), m.net(t)));
      }
    }
    if (m.bulk && !is_valid_identifier(*m.bulk)) {
      throw Error(fmt::format("device {}: invalid bulk net '{}'", m.name,
                              *m.bulk));
    }
    if (!positions_.emplace(m.name, i).second) {
      throw Error(fmt::format("duplicate device name '{}'", m.name));
    }
  }
  for (const Mosfet& m : devices_) {
    for (Terminal t : kTerminals) {
      if (seen_nets.insert(m.net(t)).second) nets_.push_back(m.net(t));
    }
  }
  net_index_ = build_net_index(devices_);
}

const Mosfet* Netlist::find(std::string_view name) const {
  auto it = positions_.find(std::string(name));
  return it == positions_.end() ? nullptr : &devices_[it->second];
}

const Mosfet& Netlist::device(std::string_view name) const {
  const Mosfet* m = find(name);
  if (m == nullptr) throw LookupError(fmt::format("unknown device: {}", name));
  return *m;
}

std::optional<std::size_t> Netlist::position(std::string_view name) const {
  auto it = positions_.find(std::string(name));
  if (it == positions_.end()) return std::nullopt;
  return it->second;
}

bool Netlist::has_net(std::string_view net) const {
  return net_index_.find(net) != net_index_.end();
}

std::span<const TerminalRef> Netlist::terminals_on(std::string_view net) const {
  auto it = net_index_.find(net);
  if (it == net_index_.end()) return {};
  return it->second;
}

namespace {

std::optional<DeviceKind> parse_kind(std::string_view token) {
  std::string lower(token);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "pmos") return DeviceKind::kPmos;
  if (lower == "nmos") return DeviceKind::kNmos;
  return std::nullopt;
}

Mosfet parse_device_line(const std::vector<std::string_view>& tokens,
                         std::size_t line_no) {
  Mosfet m;
  m.name = std::string(tokens[0]);
  if (!is_valid_identifier(m.name)) {
    throw ParseError(fmt::format("invalid device name '{}'", tokens[0]),
                     line_no);
  }
  bool has_d = false, has_g = false, has_s = false;
  std::optional<DeviceKind> kind;
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    std::string_view tok = tokens[i];
    if (tok.size() >= 2 && tok[1] == ':' &&
        (tok[0] == 'd' || tok[0] == 'g' || tok[0] == 's' || tok[0] == 'b')) {
      std::string_view net = tok.substr(2);
      if (!is_valid_identifier(net)) {
        throw ParseError(fmt::format("malformed token '{}'", tok), line_no);
      }
      bool* seen = nullptr;
      std::string* slot = nullptr;
      switch (tok[0]) {
        case 'd':
          seen = &has_d;
          slot = &m.drain;
          break;
        case 'g':
          seen = &has_g;
          slot = &m.gate;
          break;
        case 's':
          seen = &has_s;
          slot = &m.source;
          break;
        default:
          if (m.bulk) {
            throw ParseError(fmt::format("repeated token '{}'", tok), line_no);
          }
          m.bulk = std::string(net);
          continue;
      }
      if (*seen) {
        throw ParseError(fmt::format("repeated token '{}'", tok), line_no);
      }
      *seen = true;
      *slot = std::string(net);
      continue;
    }
    if (auto k = parse_kind(tok)) {
      if (kind) {
        throw ParseError(fmt::format("repeated device kind '{}'", tok),
                         line_no);
      }
      kind = k;
      continue;
    }
    if (tok.find(':') != std::string_view::npos) {
      throw ParseError(fmt::format("malformed token '{}'", tok), line_no);
    }
    throw ParseError(fmt::format("unknown device kind '{}'", tok), line_no);
  }
  if (!has_d || !has_g || !has_s) {
    std::vector<std::string_view> missing;
    if (!has_d) missing.push_back("d:");
    if (!has_g) missing.push_back("g:");
    if (!has_s) missing.push_back("s:");
    throw ParseError(fmt::format("device {} is missing {}", m.name,
                                 fmt::join(missing, ", ")),
                     line_no);
  }
  if (!kind) {
    throw ParseError(fmt::format("device {} has no kind (pmos|nmos)", m.name),
                     line_no);
  }
  m.kind = *kind;
  return m;
}

}  // namespace

Netlist parse_netlist(std::string_view text) {
  std::string cell_name;
  bool has_header = false;
  std::vector<Mosfet> devices;
  std::unordered_map<std::string, std::size_t> first_line;
  std::size_t line_no = 0;
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    std::string_view body = detail::trim(line);
    if (body.empty() || body.front() == '#' || body.front() == '*') continue;
    std::vector<std::string_view> tokens = detail::split_ws(body);
    if (tokens.size() == 2 && tokens[0] == "cell") {
      if (has_header) throw ParseError("repeated cell header", line_no);
      if (!is_valid_identifier(tokens[1])) {
        throw ParseError(fmt::format("invalid cell name '{}'", tokens[1]),
                         line_no);
      }
      has_header = true;
      cell_name = std::string(tokens[1]);
      continue;
    }
    Mosfet m = parse_device_line(tokens, line_no);
    auto [it, inserted] = first_line.emplace(m.name, line_no);
    if (!inserted) {
      throw ParseError(fmt::format("duplicate device name '{}' (first seen on "
                                   "line {})",
                                   m.name, it->second),
                       line_no);
    }
    devices.push_back(std::move(m));
  }
  if (devices.empty()) throw ParseError("no devices");
  return Netlist(std::move(cell_name), std::move(devices));
}

Netlist read_netlist_file(const std::filesystem::path& path) {
  return parse_netlist(detail::read_file(path));
}

std::string format_device(const Mosfet& device, bool with_bulk) {
  std::string line = fmt::format("{} d:{} g:{} s:{}", device.name,
                                 device.drain, device.gate, device.source);
  if (with_bulk && device.bulk) line += fmt::format(" b:{}", *device.bulk);
  line += ' ';
  line += to_string(device.kind);
  return line;
}

std::string serialize_netlist(const Netlist& netlist) {
  std::string out;
  if (!netlist.cell_name().empty()) {
    out += fmt::format("cell {}\n", netlist.cell_name());
  }
  for (const Mosfet& m : netlist.devices()) {
    out += format_device(m);
    out += '\n';
  }
  return out;
}

std::vector<std::string> devices_on_nets(const Netlist& netlist,
                                         std::span<const std::string> nets) {
  if (nets.empty()) throw LookupError("no nets given");
  std::vector<std::string> unknown;
  for (const std::string& net : nets) {
    if (!netlist.has_net(net) &&
        std::find(unknown.begin(), unknown.end(), net) == unknown.end()) {
      unknown.push_back(net);
    }
  }
  if (!unknown.empty()) {
    throw LookupError(fmt::format("unknown nets: {}", fmt::join(unknown, ", ")));
  }
  std::vector<bool> hit(netlist.size(), false);
  for (const std::string& net : nets) {
    for (const TerminalRef& ref : netlist.terminals_on(net)) {
      hit[*netlist.position(ref.device)] = true;
    }
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < hit.size(); ++i) {
    if (hit[i]) out.push_back(netlist.devices()[i].name);
  }
  return out;
}

std::vector<std::string> nets_of(const Mosfet& device) {
  std::vector<std::string> out;
  for (Terminal t : kTerminals) {
    const std::string& net = device.net(t);
    if (std::find(out.begin(), out.end(), net) == out.end()) out.push_back(net);
  }
  return out;
}

const NetCounts& NetStats::at(std::string_view net) const {
  auto it = per_net.find(net);
  if (it == per_net.end()) {
    throw LookupError(fmt::format("unknown nets: {}", net));
  }
  return it->second;
}

int NetStats::total_degree() const {
  int total = 0;
  for (const auto& [net, counts] : per_net) total += counts.degree();
  return total;
}

NetStats net_statistics(const Netlist& netlist) {
  NetStats stats;
  for (const Mosfet& m : netlist.devices()) {
    const bool pmos = m.kind == DeviceKind::kPmos;
    for (Terminal t : kTerminals) {
      NetCounts& c = stats.per_net[m.net(t)];
      if (is_diffusion(t)) {
        ++(pmos ? c.diffusion_pmos : c.diffusion_nmos);
      } else {
        ++(pmos ? c.gate_pmos : c.gate_nmos);
      }
    }
  }
  return stats;
}

}  // namespace cellclust
