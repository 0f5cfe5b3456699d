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
#include <string>
#include <vector>

#include "netsched/resources.h"

namespace netsched {

struct ContainerSpec {
  Resources c_min;
  Resources c_max;
};

struct VirtualLink {
  int i = 0;
  int j = 0;
  double bw_min = 0.0;
  double bw_max = 0.0;
  // True iff i and j share a pod; filled by Request::finalize().
  bool intra_pod = false;
};

struct Request {
  RequestId id = 0;
  std::vector<ContainerSpec> containers;
  // Partition of container indices; singleton pods allowed.
  std::vector<std::vector<int>> pods;
  std::vector<VirtualLink> vlinks;
  std::int64_t submit_tick = 0;
  std::int64_t duration_ticks = 1;

  // Pod index of every container; empty until finalize().
  std::vector<int> pod_of;

  // Derives pod_of and the intra_pod flags. Call after editing pods/vlinks.
  void finalize();
};

struct WorkloadConfig {
  int n_requests = 200;
  int containers_per_request = 5;
  double pod_fraction = 0.5;
  int cpu_max = 2;
  int ram_max = 4;
  int bw_cap_mbps = 50;
  std::int64_t horizon = 500;
  std::int64_t max_duration = 200;
  // Probability of each non-tree container pair receiving an extra link.
  double extra_link_probability = 0.0;
};

std::vector<Request> generate_workload(const WorkloadConfig &cfg, std::uint64_t seed);

// Every invariant violation, in container/pod/link order. Empty when valid.
std::vector<std::string> validate_request(const Request &req);

// JSON Lines, one request per line, each tagged with schema version "v".
inline constexpr int kWorkloadSchemaVersion = 1;
std::string dump_workload_jsonl(const std::vector<Request> &requests);
std::vector<Request> load_workload_jsonl(const std::string &text);

}  // namespace netsched
