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

#include "placement_builder.h"

#include <algorithm>
#include <map>
#include <numeric>

#include "netsched/pathing.h"

namespace netsched::detail {

std::vector<int> pod_order(const Request &req) {
  std::vector<double> demand(req.pods.size(), 0.0);
  for (std::size_t g = 0; g < req.pods.size(); ++g) {
    for (int c : req.pods[g]) {
      for (double x : req.containers[static_cast<std::size_t>(c)].c_min) demand[g] += x;
    }
  }
  std::vector<int> order(req.pods.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return demand[static_cast<std::size_t>(a)] > demand[static_cast<std::size_t>(b)];
  });
  return order;
}

std::vector<std::int64_t> pod_min_units(const Request &req, int pod, std::size_t num_resources) {
  std::vector<std::int64_t> units(num_resources, 0);
  for (int c : req.pods[static_cast<std::size_t>(pod)]) {
    const auto &spec = req.containers[static_cast<std::size_t>(c)];
    for (std::size_t r = 0; r < num_resources; ++r) units[r] += to_units(spec.c_min[r]);
  }
  return units;
}

Reservation::Reservation(const DataCenter &dc) : dc_(dc) {}

std::int64_t Reservation::free_units(ServerId s, std::size_t r) const {
  std::int64_t free = dc_.server_residual_units(s, r);
  for (const auto &[server, units] : taken_) {
    if (server == s) free -= units[r];
  }
  return free;
}

bool Reservation::fits(ServerId s, const std::vector<std::int64_t> &demand) const {
  for (std::size_t r = 0; r < demand.size(); ++r) {
    if (free_units(s, r) < demand[r]) return false;
  }
  return true;
}

void Reservation::reserve(ServerId s, const std::vector<std::int64_t> &demand) {
  taken_.emplace_back(s, demand);
}

double Reservation::residual_score(ServerId s) const {
  const auto &cap = dc_.server(s).capacity;
  double sum = 0.0;
  for (std::size_t r = 0; r < cap.size(); ++r) {
    sum += from_units(free_units(s, r)) / cap[r];
  }
  return sum / static_cast<double>(cap.size());
}

std::optional<Placement> realize(const DataCenter &dc, const Request &req,
                                 const std::vector<ServerId> &pod_to_server,
                                 const GrantPolicy &policy) {
  const std::size_t num_r = dc.num_resources();
  const std::size_t n = req.containers.size();
  Placement p;
  p.request_id = req.id;
  p.container_to_server.assign(n, -1);
  p.allocated_caps.assign(n, Resources(num_r, 0.0));

  // Containers visited in pod order so that raises favour larger pods first.
  std::vector<int> visit;
  for (int g : pod_order(req)) {
    for (int c : req.pods[static_cast<std::size_t>(g)]) {
      p.container_to_server[static_cast<std::size_t>(c)] = pod_to_server[static_cast<std::size_t>(g)];
      visit.push_back(c);
    }
  }

  std::map<ServerId, std::vector<std::int64_t>> leftover;
  std::vector<std::vector<std::int64_t>> granted(n, std::vector<std::int64_t>(num_r, 0));
  for (int c : visit) {
    ServerId s = p.container_to_server[static_cast<std::size_t>(c)];
    auto it = leftover.find(s);
    if (it == leftover.end()) {
      std::vector<std::int64_t> free(num_r);
      for (std::size_t r = 0; r < num_r; ++r) free[r] = dc.server_residual_units(s, r);
      it = leftover.emplace(s, std::move(free)).first;
    }
    const auto &spec = req.containers[static_cast<std::size_t>(c)];
    for (std::size_t r = 0; r < num_r; ++r) {
      std::int64_t need = to_units(spec.c_min[r]);
      it->second[r] -= need;
      if (it->second[r] < 0) return std::nullopt;
      granted[static_cast<std::size_t>(c)][r] = need;
    }
  }
  if (policy.capacity == Grant::kLargestFeasible) {
    for (int c : visit) {
      auto &free = leftover[p.container_to_server[static_cast<std::size_t>(c)]];
      const auto &spec = req.containers[static_cast<std::size_t>(c)];
      for (std::size_t r = 0; r < num_r; ++r) {
        std::int64_t room = to_units(spec.c_max[r]) - granted[static_cast<std::size_t>(c)][r];
        std::int64_t add = std::min(room, free[r]);
        granted[static_cast<std::size_t>(c)][r] += add;
        free[r] -= add;
      }
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < num_r; ++r) {
      // Exact interval ends are returned verbatim rather than via the ledger.
      const auto &spec = req.containers[c];
      std::int64_t g = granted[c][r];
      if (g == to_units(spec.c_min[r])) {
        p.allocated_caps[c][r] = spec.c_min[r];
      } else if (g == to_units(spec.c_max[r])) {
        p.allocated_caps[c][r] = spec.c_max[r];
      } else {
        p.allocated_caps[c][r] = from_units(g);
      }
    }
  }

  const std::size_t m = req.vlinks.size();
  p.vlink_to_path.assign(m, Route{});
  p.allocated_bw.assign(m, 0.0);
  std::vector<PathQuery> queries;
  std::vector<std::size_t> routed;
  for (std::size_t e = 0; e < m; ++e) {
    const auto &link = req.vlinks[e];
    ServerId a = p.container_to_server[static_cast<std::size_t>(link.i)];
    ServerId b = p.container_to_server[static_cast<std::size_t>(link.j)];
    if (a == b) {
      p.allocated_bw[e] =
          policy.colocated_bandwidth == Grant::kLargestFeasible ? link.bw_max : link.bw_min;
      continue;
    }
    queries.push_back({a, b, link.bw_min});
    routed.push_back(e);
  }
  if (routed.empty()) return p;

  auto paths = batch_widest_paths(dc, queries);
  std::map<LinkId, std::int64_t> free_bw;
  for (std::size_t q = 0; q < routed.size(); ++q) {
    if (!paths[q]) return std::nullopt;
    std::int64_t need = to_units(req.vlinks[routed[q]].bw_min);
    for (LinkId l : paths[q]->route.links) {
      auto it = free_bw.try_emplace(l, dc.link_residual_units(l)).first;
      it->second -= need;
      if (it->second < 0) return std::nullopt;
    }
  }
  for (std::size_t q = 0; q < routed.size(); ++q) {
    const auto &link = req.vlinks[routed[q]];
    double bw = link.bw_min;
    if (policy.bandwidth == Grant::kLargestFeasible) {
      std::int64_t add = to_units(link.bw_max) - to_units(link.bw_min);
      for (LinkId l : paths[q]->route.links) add = std::min(add, free_bw[l]);
      for (LinkId l : paths[q]->route.links) free_bw[l] -= add;
      bw = add == to_units(link.bw_max) - to_units(link.bw_min)
               ? link.bw_max
               : from_units(to_units(link.bw_min) + add);
    }
    p.vlink_to_path[routed[q]] = std::move(paths[q]->route);
    p.allocated_bw[routed[q]] = bw;
  }
  return p;
}

}  // namespace netsched::detail
