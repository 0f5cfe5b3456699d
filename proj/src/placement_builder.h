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
#include <optional>
#include <vector>

#include "netsched/placement.h"
#include "netsched/topology.h"
#include "netsched/workload.h"

namespace netsched::detail {

enum class Grant { kMinimum, kLargestFeasible };

struct GrantPolicy {
  Grant capacity = Grant::kMinimum;
  Grant bandwidth = Grant::kMinimum;
  // Bandwidth granted to virtual links whose endpoints share a server.
  Grant colocated_bandwidth = Grant::kMinimum;
};

// Pods by descending total c_min (sum over containers and resources), ties by
// pod index.
std::vector<int> pod_order(const Request &req);

// Tentative per-server reservations made while a single request is placed.
class Reservation {
 public:
  explicit Reservation(const DataCenter &dc);

  bool fits(ServerId s, const std::vector<std::int64_t> &demand) const;
  void reserve(ServerId s, const std::vector<std::int64_t> &demand);
  std::int64_t free_units(ServerId s, std::size_t r) const;
  // Mean over resources of residual/capacity after reservations.
  double residual_score(ServerId s) const;

 private:
  const DataCenter &dc_;
  std::vector<std::pair<ServerId, std::vector<std::int64_t>>> taken_;
};

// Pod-level c_min demand in ledger units.
std::vector<std::int64_t> pod_min_units(const Request &req, int pod, std::size_t num_resources);

// Turns a pod -> server assignment into a placement: capacities and
// bandwidth granted per policy, inter-server links routed with
// widest_shortest_path at bw_min on the unchanged snapshot, then re-checked
// for links shared by several virtual links of this request.
std::optional<Placement> realize(const DataCenter &dc, const Request &req,
                                 const std::vector<ServerId> &pod_to_server,
                                 const GrantPolicy &policy);

}  // namespace netsched::detail
