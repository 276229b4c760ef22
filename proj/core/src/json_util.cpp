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

#include "json_util.hpp"

#include <set>
#include <string>
#include <vector>

#include "cellclust/error.hpp"

namespace cellclust::detail {

nlohmann::ordered_json parse_json_strict(std::string_view text) {
  using nlohmann::ordered_json;
  std::vector<std::set<std::string>> keys;
  std::string duplicate;
  auto callback = [&](int /*depth*/, ordered_json::parse_event_t event,
                      ordered_json& parsed) {
    switch (event) {
      case ordered_json::parse_event_t::object_start:
        keys.emplace_back();
        break;
      case ordered_json::parse_event_t::object_end:
        if (!keys.empty()) keys.pop_back();
        break;
      case ordered_json::parse_event_t::key:
        if (!keys.empty() && !keys.back().insert(parsed.get<std::string>()).second &&
            duplicate.empty()) {
          duplicate = parsed.get<std::string>();
        }
        break;
      default:
        break;
    }
    return true;
  };
  ordered_json j;
  try {
    j = ordered_json::parse(text.begin(), text.end(), callback);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!duplicate.empty()) {
    throw ParseError("duplicate key '" + duplicate + "'");
  }
  return j;
}

}  // namespace cellclust::detail
