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

#include <cstdint>

namespace netsched {

// Flat index of the unordered pair {u, v} in a row-major upper-triangular
// layout over n vertices: (0,1) -> 0, (0,2) -> 1, ..., (n-2,n-1) -> n(n-1)/2-1.
// Symmetric in u and v. Throws kInvalidParameter when u == v or out of range.
std::uint64_t edge_index(std::int64_t u, std::int64_t v, std::int64_t n);

inline std::uint64_t edge_index_count(std::int64_t n) {
  return static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1) / 2;
}

}  // namespace netsched
