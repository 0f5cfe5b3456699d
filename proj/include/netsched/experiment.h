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

#include <string>
#include <string_view>
#include <vector>

#include "netsched/simulator.h"

namespace netsched {

struct ExperimentConfig {
  std::string preset;
  SimulationConfig sim;
  // Scheduler set for `compare`.
  std::vector<SchedulerSpec> schedulers;
  // Request exported by `export-lp`.
  int request_index = 0;
  std::string out_dir = "out";
};

// "paper-small" (k=4, 200 x 5 containers, 50 Mbps), "paper-small-1mbps",
// "paper-large" (k=20, 6000 x 4 containers). Throws kInvalidParameter.
ExperimentConfig preset_config(std::string_view name);
std::vector<std::string> preset_names();

// JSON document: optional "preset" as the base, then any of "seed",
// "horizon", "head_of_line_blocking", "topology", "workload", "scheduler",
// "schedulers", "request_index", "out". Unknown keys are rejected
// (kInvalidInput).
ExperimentConfig parse_experiment_config(const std::string &json_text);
std::string experiment_config_json(const ExperimentConfig &cfg);

}  // namespace netsched
