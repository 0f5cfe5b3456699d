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

#include <vector>

#include "netsched/resources.h"

namespace netsched {

// A physical path. vertices.size() == links.size() + 1 for non-empty routes;
// an empty route marks a virtual link whose endpoints share a server.
struct Route {
  std::vector<VertexId> vertices;
  std::vector<LinkId> links;

  bool empty() const { return links.empty(); }
  std::size_t hops() const { return links.size(); }
};

// Accepted mapping of one request: containers onto servers, virtual links
// onto routes, plus the capacities granted inside each min-max interval.
struct Placement {
  RequestId request_id = 0;
  std::vector<ServerId> container_to_server;
  std::vector<Route> vlink_to_path;
  std::vector<Resources> allocated_caps;
  std::vector<double> allocated_bw;
};

}  // namespace netsched
