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

#include "netsched/placement.h"
#include "netsched/topology.h"
#include "netsched/workload.h"

namespace netsched {

// Binpacking baseline. Each pod (largest c_min first) goes to the feasible
// server with the lowest residual score, i.e. the most loaded one; capacities
// and bandwidth are granted at their minima. Virtual links between servers are
// routed afterwards; a routing failure rejects the request.
std::optional<Placement> best_fit(const DataCenter &dc, const Request &req);

// Spread baseline. Like best_fit but picks the emptiest feasible server and
// grants the largest feasible value up to c_max / bw_max.
std::optional<Placement> worst_fit(const DataCenter &dc, const Request &req);

}  // namespace netsched
