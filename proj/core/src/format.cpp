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

#include "cellclust/format.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <string_view>

#include "cellclust/error.hpp"

namespace cellclust {

std::string format_decimal(double value, int places) {
  if (!std::isfinite(value)) throw Error("cannot format a non-finite value");
  if (places < 0) throw Error("negative decimal places");
  std::array<char, 512> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::fixed);
  if (ec != std::errc()) throw Error("number too long to format");
  std::string_view text(buf.data(), static_cast<std::size_t>(end - buf.data()));

  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  const auto dot = text.find('.');
  std::string digits(text.substr(0, dot));  // integer part
  std::string frac = dot == std::string_view::npos
                         ? std::string()
                         : std::string(text.substr(dot + 1));

  const auto kept = static_cast<std::size_t>(places);
  if (frac.size() > kept) {
    const char next = frac[kept];
    const bool rest_nonzero =
        frac.find_first_not_of('0', kept + 1) != std::string::npos;
    frac.resize(kept);
    std::string all = digits + frac;
    const bool last_odd = ((all.back() - '0') % 2) == 1;
    const bool round_up =
        next > '5' || (next == '5' && (rest_nonzero || last_odd));
    if (round_up) {
      std::size_t i = all.size();
      while (i > 0) {
        --i;
        if (all[i] == '9') {
          all[i] = '0';
        } else {
          ++all[i];
          break;
        }
        if (i == 0) all.insert(all.begin(), '1');
      }
    }
    digits = all.substr(0, all.size() - kept);
    frac = all.substr(all.size() - kept);
  } else {
    frac.append(kept - frac.size(), '0');
  }

  std::string out;
  const bool is_zero = digits.find_first_not_of('0') == std::string::npos &&
                       frac.find_first_not_of('0') == std::string::npos;
  if (negative && !is_zero) out += '-';
  out += digits;
  if (kept > 0) {
    out += '.';
    out += frac;
  }
  return out;
}

}  // namespace cellclust
