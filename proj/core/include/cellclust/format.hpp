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

#pragma once

#include <string>

namespace cellclust {

/// Fixed-point rendering with `places` decimals, rounding half to even.
/// Rounding is applied to the shortest decimal string that round-trips to
/// `value`, so 0.0625 renders as "0.062" and 0.1875 as "0.188" on every
/// platform. Negative zero renders without a sign.
std::string format_decimal(double value, int places);

/// Scores are always shown with three decimals.
inline std::string format_score(double value) {
  return format_decimal(value, 3);
}

}  // namespace cellclust
