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

#include "netsched/pathing.h"

#include <algorithm>
#include <limits>

#include "netsched/error.h"
#include "netsched/parallel.h"

namespace netsched {

std::uint64_t edge_index(std::int64_t u, std::int64_t v, std::int64_t n) {
  if (u == v) throw Error(ErrorCode::kInvalidParameter, "edge_index needs distinct vertices");
  if (u < 0 || v < 0 || u >= n || v >= n) {
    throw Error(ErrorCode::kInvalidParameter, "edge_index vertex out of range");
  }
  auto a = static_cast<std::uint64_t>(std::min(u, v));
  auto b = static_cast<std::uint64_t>(std::max(u, v));
  auto size = static_cast<std::uint64_t>(n);
  return a * size - a * (a + 1) / 2 + (b - a - 1);
}

namespace {

void check_endpoints(const DataCenter &dc, ServerId src, ServerId dst) {
  if (!dc.is_server(src) || !dc.is_server(dst)) {
    throw Error(ErrorCode::kInvalidParameter, "path endpoints must be servers");
  }
  if (src == dst) {
    throw Error(ErrorCode::kInvalidParameter, "path endpoints must differ");
  }
}

struct Scratch {
  std::vector<int> dist;
  std::vector<std::int64_t> best;
  std::vector<std::vector<VertexId>> layers;
};

}  // namespace

std::optional<PathResult> widest_shortest_path(const DataCenter &dc, ServerId src, ServerId dst,
                                               double demand_min) {
  check_endpoints(dc, src, dst);
  constexpr std::int64_t kOpen = std::numeric_limits<std::int64_t>::max();
  const std::int64_t demand = to_units(std::max(demand_min, 0.0));
  const std::size_t n = dc.num_vertices();

  thread_local Scratch scratch;
  auto &dist = scratch.dist;
  auto &best = scratch.best;
  auto &layers = scratch.layers;
  dist.assign(n, -1);
  best.assign(n, -1);
  layers.clear();

  // BFS from the destination over links that can carry the demand, stopping
  // once the layer holding the source is complete.
  dist[static_cast<std::size_t>(dst)] = 0;
  layers.push_back({dst});
  while (dist[static_cast<std::size_t>(src)] < 0 && !layers.back().empty()) {
    std::vector<VertexId> next;
    const int d = static_cast<int>(layers.size());
    for (VertexId at : layers.back()) {
      for (const auto &adj : dc.neighbors(at)) {
        if (dist[static_cast<std::size_t>(adj.vertex)] >= 0) continue;
        if (dc.link_residual_units(adj.link) < demand) continue;
        dist[static_cast<std::size_t>(adj.vertex)] = d;
        next.push_back(adj.vertex);
      }
    }
    layers.push_back(std::move(next));
  }
  const int hops = dist[static_cast<std::size_t>(src)];
  if (hops < 0) return std::nullopt;

  // best[x]: widest bottleneck over shortest feasible x -> dst paths.
  best[static_cast<std::size_t>(dst)] = kOpen;
  for (int d = 1; d < hops; ++d) {
    for (VertexId x : layers[static_cast<std::size_t>(d)]) {
      std::int64_t b = -1;
      for (const auto &adj : dc.neighbors(x)) {
        if (dist[static_cast<std::size_t>(adj.vertex)] != d - 1) continue;
        std::int64_t w = dc.link_residual_units(adj.link);
        if (w < demand) continue;
        b = std::max(b, std::min(w, best[static_cast<std::size_t>(adj.vertex)]));
      }
      best[static_cast<std::size_t>(x)] = b;
    }
  }
  std::int64_t target = -1;
  for (const auto &adj : dc.neighbors(src)) {
    if (dist[static_cast<std::size_t>(adj.vertex)] != hops - 1) continue;
    std::int64_t w = dc.link_residual_units(adj.link);
    if (w < demand) continue;
    target = std::max(target, std::min(w, best[static_cast<std::size_t>(adj.vertex)]));
  }

  // Walk forward taking the smallest vertex that keeps the target bottleneck.
  PathResult result;
  result.route.vertices.push_back(src);
  VertexId at = src;
  std::int64_t bottleneck = kOpen;
  for (int d = hops; d > 0; --d) {
    bool moved = false;
    for (const auto &adj : dc.neighbors(at)) {
      if (dist[static_cast<std::size_t>(adj.vertex)] != d - 1) continue;
      std::int64_t w = dc.link_residual_units(adj.link);
      if (w < demand || w < target || best[static_cast<std::size_t>(adj.vertex)] < target) continue;
      result.route.links.push_back(adj.link);
      result.route.vertices.push_back(adj.vertex);
      bottleneck = std::min(bottleneck, w);
      at = adj.vertex;
      moved = true;
      break;
    }
    if (!moved) return std::nullopt;  // unreachable when target was computed
  }
  result.bottleneck = from_units(bottleneck);
  return result;
}

std::vector<std::optional<PathResult>> batch_widest_paths(const DataCenter &dc,
                                                          const std::vector<PathQuery> &queries) {
  for (std::size_t q = 0; q < queries.size(); ++q) {
    try {
      check_endpoints(dc, queries[q].src, queries[q].dst);
    } catch (const Error &e) {
      throw Error(e.code(), "query " + std::to_string(q) + ": " + e.what());
    }
  }
  std::vector<std::optional<PathResult>> out(queries.size());
  parallel_for(queries.size(), 8, [&](std::size_t begin, std::size_t end) {
    for (std::size_t q = begin; q < end; ++q) {
      out[q] = widest_shortest_path(dc, queries[q].src, queries[q].dst, queries[q].demand_min);
    }
  });
  return out;
}

}  // namespace netsched
