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

#include <optional>
#include <vector>

#include "netsched/edge_index.h"
#include "netsched/placement.h"
#include "netsched/topology.h"

namespace netsched {

struct PathResult {
  Route route;
  // Minimum residual along the route at query time.
  double bottleneck = 0.0;
};

// Among paths whose every link has residual >= demand_min: fewest hops, then
// widest bottleneck, then lexicographically smallest vertex sequence.
// std::nullopt when no such path exists. Throws kInvalidParameter when
// src == dst or either endpoint is not a server.
std::optional<PathResult> widest_shortest_path(const DataCenter &dc, ServerId src, ServerId dst,
                                               double demand_min);

struct PathQuery {
  ServerId src = 0;
  ServerId dst = 0;
  double demand_min = 0.0;
};

// Element-wise identical to calling widest_shortest_path on each query
// against the same (unchanging) data center. Queries may run concurrently.
std::vector<std::optional<PathResult>> batch_widest_paths(const DataCenter &dc,
                                                          const std::vector<PathQuery> &queries);

}  // namespace netsched
