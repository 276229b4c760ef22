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

// Technology-independent transistor netlists.
//
// The interchange format is one device per line:
//
//   mp1 d:OUT g:A s:VDD pmos
//
// The terminal tokens may appear in any order after the device name, an
// optional `b:<net>` bulk token is retained but never scored, and the
// device kind is the single unprefixed token (`pmos` or `nmos`, any case).
// Lines starting with `#` or `*` are comments. An optional `cell <name>`
// header names the cell.

#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cellclust {

enum class DeviceKind { kPmos, kNmos };

/// The three scored terminals. Bulk is deliberately absent.
enum class Terminal { kDrain, kGate, kSource };

inline constexpr std::array<Terminal, 3> kTerminals = {
    Terminal::kDrain, Terminal::kGate, Terminal::kSource};

std::string_view to_string(DeviceKind kind);
/// "d", "g" or "s".
std::string_view terminal_letter(Terminal terminal);
std::optional<Terminal> terminal_from_letter(std::string_view letter);
inline bool is_diffusion(Terminal t) { return t != Terminal::kGate; }

/// True if `name` matches `[A-Za-z0-9_./:]+`.
bool is_valid_identifier(std::string_view name);

struct Mosfet {
  std::string name;
  std::string drain;
  std::string gate;
  std::string source;
  DeviceKind kind = DeviceKind::kNmos;
  std::optional<std::string> bulk;

  const std::string& net(Terminal terminal) const;

  bool operator==(const Mosfet&) const = default;
};

struct TerminalRef {
  std::string device;
  Terminal terminal;

  bool operator==(const TerminalRef&) const = default;
};

using NetIndex = std::map<std::string, std::vector<TerminalRef>, std::less<>>;

/// An immutable, validated netlist. Construction throws `Error` when a
/// device name is duplicated, a name is not a valid identifier, or there are
/// no devices.
class Netlist {
 public:
  Netlist(std::string cell_name, std::vector<Mosfet> devices);

  const std::string& cell_name() const { return cell_name_; }
  std::span<const Mosfet> devices() const { return devices_; }
  std::size_t size() const { return devices_.size(); }

  const Mosfet* find(std::string_view name) const;
  /// Throws `LookupError` for unknown names.
  const Mosfet& device(std::string_view name) const;
  /// Position of the device in netlist order.
  std::optional<std::size_t> position(std::string_view name) const;

  /// Every net on a drain/gate/source terminal, in order of first appearance.
  const std::vector<std::string>& nets() const { return nets_; }
  bool has_net(std::string_view net) const;
  std::span<const TerminalRef> terminals_on(std::string_view net) const;
  const NetIndex& net_index() const { return net_index_; }

  bool operator==(const Netlist& other) const {
    return cell_name_ == other.cell_name_ && devices_ == other.devices_;
  }

 private:
  std::string cell_name_;
  std::vector<Mosfet> devices_;
  std::unordered_map<std::string, std::size_t> positions_;
  std::vector<std::string> nets_;
  NetIndex net_index_;
};

/// Builds the net index from scratch; exposed so callers can check that the
/// cached index is exactly the inverse of the device terminal lists.
NetIndex build_net_index(std::span<const Mosfet> devices);

Netlist parse_netlist(std::string_view text);
Netlist read_netlist_file(const std::filesystem::path& path);

/// One device line. `with_bulk = false` gives the bare four-field form used
/// in prompts.
std::string format_device(const Mosfet& device, bool with_bulk = true);
std::string serialize_netlist(const Netlist& netlist);

/// Devices with at least one terminal on any of `nets`, in netlist order.
/// Throws `LookupError` naming every unknown net.
std::vector<std::string> devices_on_nets(const Netlist& netlist,
                                         std::span<const std::string> nets);

/// Distinct nets on the drain/gate/source terminals of `device`.
std::vector<std::string> nets_of(const Mosfet& device);

struct NetCounts {
  int diffusion_pmos = 0;
  int diffusion_nmos = 0;
  int gate_pmos = 0;
  int gate_nmos = 0;

  int diffusion() const { return diffusion_pmos + diffusion_nmos; }
  int gate() const { return gate_pmos + gate_nmos; }
  int degree() const { return diffusion() + gate(); }

  bool operator==(const NetCounts&) const = default;
};

struct NetStats {
  std::map<std::string, NetCounts, std::less<>> per_net;

  const NetCounts& at(std::string_view net) const;
  int total_degree() const;
};

NetStats net_statistics(const Netlist& netlist);

}  // namespace cellclust
