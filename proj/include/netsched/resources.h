// Copyright 2026 The netsched Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace netsched {

using ServerId = std::int32_t;
using VertexId = std::int32_t;
using LinkId = std::int32_t;
using RequestId = std::int32_t;

// Indexed by resource; the default resource set is {CPU cores, RAM GB}.
using Resources = std::vector<double>;

inline constexpr std::size_t kCpu = 0;
inline constexpr std::size_t kRam = 1;
inline constexpr std::size_t kDefaultResources = 2;

// Ledger quantum: one millionth of a core, GB or Mbps.
inline constexpr double kUnitsPerQuantity = 1e6;

inline std::int64_t to_units(double quantity) {
  return std::llround(quantity * kUnitsPerQuantity);
}

inline double from_units(std::int64_t units) {
  return static_cast<double>(units) / kUnitsPerQuantity;
}

}  // namespace netsched
