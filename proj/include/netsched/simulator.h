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
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "netsched/exact.h"
#include "netsched/placement.h"
#include "netsched/topology.h"
#include "netsched/workload.h"

namespace netsched {

// "bf", "wf", "ahp", "topsis" (with a weighting schema) or "milp" (with alpha).
struct SchedulerSpec {
  std::string name = "bf";
  std::string schema = "flat";
  double alpha = 0.5;
  // Assignment-space bound handed to the exact solver.
  double max_assignments = 2e6;

  // "bf", "ahp-network", "milp-0.5", ...
  std::string label() const;
};

// "bf", "wf", "ahp:clustering", "topsis:network", "milp:0.5".
SchedulerSpec parse_scheduler_spec(const std::string &text);

class Scheduler {
 public:
  virtual ~Scheduler() = default;
  // nullopt means "does not fit now"; errors are exceptions.
  virtual std::optional<Placement> schedule(const DataCenter &dc, const Request &req) = 0;
};

// Throws kInvalidParameter for unknown names, schemas or alpha outside [0,1].
std::unique_ptr<Scheduler> make_scheduler(const SchedulerSpec &spec);

struct TopologyConfig {
  int k = 4;
  Resources server_capacity = {24.0, 256.0};
  double link_bandwidth = 1000.0;
};

struct SimulationConfig {
  TopologyConfig topology;
  WorkloadConfig workload;
  std::uint64_t seed = 1;
  SchedulerSpec scheduler;
  // Ticks simulated: 0 .. horizon-1.
  std::int64_t horizon = 500;
  // Stop scanning the queue at the first request that does not fit.
  bool head_of_line_blocking = true;
  // Re-derive the DC state from scratch after every tick and fail on drift.
  bool audit_every_tick = false;
};

// Throws kInvalidParameter on an invalid configuration.
void validate_config(const SimulationConfig &cfg);

struct RequestRecord {
  RequestId id = 0;
  std::int64_t submit_tick = 0;
  // -1 when rejected.
  std::int64_t schedule_tick = -1;
  std::int64_t delay = 0;
  std::int64_t attempts = 0;
  std::vector<double> container_utility;
  std::vector<double> link_utility;
  // F(N^s) and F(E^s) right after the request was placed.
  double server_fragmentation = 0.0;
  double link_fragmentation = 0.0;

  bool accepted() const { return schedule_tick >= 0; }
};

struct TickRecord {
  std::int64_t tick = 0;
  double server_fragmentation = 0.0;
  double link_fragmentation = 0.0;
  std::size_t queue_length = 0;
  std::size_t running = 0;
};

struct SimulationTotals {
  std::size_t submitted = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  double mean_delay = 0.0;
  double p50_delay = 0.0;
  double p95_delay = 0.0;
  std::int64_t max_delay = 0;
  double mean_container_utility = 0.0;
  double mean_link_utility = 0.0;
  double mean_server_fragmentation = 0.0;
  double mean_link_fragmentation = 0.0;
  // Scheduler invocations.
  std::uint64_t events = 0;
  std::int64_t horizon_ticks = 0;
  // Wall clock; excluded from determinism comparisons.
  double scheduler_seconds = 0.0;
  double runtime_seconds = 0.0;
};

struct SimulationReport {
  std::string scheduler;
  std::vector<RequestRecord> requests;
  std::vector<TickRecord> ticks;
  SimulationTotals totals;
};

// Observer state after each tick, for instrumentation and tests.
struct TickView {
  std::int64_t tick = 0;
  const DataCenter *dc = nullptr;
  const std::vector<RequestId> *queue = nullptr;
  std::size_t submitted = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};
using TickObserver = std::function<void(const TickView &)>;

DataCenter build_topology(const TopologyConfig &cfg);

SimulationReport run(const SimulationConfig &cfg, const TickObserver &observer = {});

// Runs a prepared workload on a prepared data center (copied).
SimulationReport run_workload(const SimulationConfig &cfg, const DataCenter &dc,
                              const std::vector<Request> &workload,
                              const TickObserver &observer = {});

struct ComparisonRow {
  std::string scheduler;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  double mean_link_utility = 0.0;
  double mean_container_utility = 0.0;
  double mean_delay = 0.0;
  double mean_server_fragmentation = 0.0;
  double mean_link_fragmentation = 0.0;
  std::uint64_t events = 0;
  double runtime_seconds = 0.0;
};

ComparisonRow comparison_row(const SimulationReport &report);

// Every config must share topology, workload, seed and horizon; otherwise
// kInvalidParameter.
std::vector<ComparisonRow> compare(const std::vector<SimulationConfig> &cfgs);

inline constexpr int kReportSchemaVersion = 1;

std::string report_json(const SimulationReport &report);
std::string requests_csv(const SimulationReport &report);
std::string ticks_csv(const SimulationReport &report);
std::string comparison_csv(const std::vector<ComparisonRow> &rows);

}  // namespace netsched
