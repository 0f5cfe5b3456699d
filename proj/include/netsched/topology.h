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

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "netsched/placement.h"
#include "netsched/resources.h"

namespace netsched {

struct Server {
  ServerId id = 0;
  Resources capacity;
  Resources residual;
  bool active = false;
  int hosted_containers = 0;
};

struct PhysicalLink {
  // Stored once per unordered pair with u < v.
  VertexId u = 0;
  VertexId v = 0;
  double capacity = 0.0;
  double residual = 0.0;
  bool active = false;
  int hosted_vlinks = 0;

  VertexId other(VertexId end) const { return end == u ? v : u; }
};

struct LinkSpec {
  VertexId u = 0;
  VertexId v = 0;
  double bandwidth = 0.0;
};

struct Adjacent {
  VertexId vertex;
  LinkId link;
};

// Data-center graph. Vertices [0, num_servers) are servers, the rest are
// switches. Residual bookkeeping is kept in integer micro-units so that
// apply/release pairs restore the exact prior state.
class DataCenter {
 public:
  DataCenter(std::vector<Resources> server_capacity, std::size_t num_switches,
             std::vector<LinkSpec> links, int k = 0);

  int k() const { return k_; }
  std::size_t num_servers() const { return servers_.size(); }
  std::size_t num_switches() const { return num_switches_; }
  std::size_t num_vertices() const { return servers_.size() + num_switches_; }
  std::size_t num_resources() const { return num_resources_; }
  bool is_server(VertexId v) const {
    return v >= 0 && static_cast<std::size_t>(v) < servers_.size();
  }

  const std::vector<Server> &servers() const { return servers_; }
  const Server &server(ServerId id) const { return servers_.at(static_cast<std::size_t>(id)); }
  const std::vector<PhysicalLink> &links() const { return links_; }
  const PhysicalLink &link(LinkId id) const { return links_.at(static_cast<std::size_t>(id)); }
  const std::vector<Adjacent> &neighbors(VertexId v) const {
    return adjacency_.at(static_cast<std::size_t>(v));
  }
  std::optional<LinkId> find_link(VertexId a, VertexId b) const;

  // Integer ledger views used by feasibility checks.
  std::int64_t server_residual_units(ServerId id, std::size_t r) const {
    return server_units_[static_cast<std::size_t>(id) * num_resources_ + r];
  }
  std::int64_t link_residual_units(LinkId id) const {
    return link_units_[static_cast<std::size_t>(id)];
  }

  // All-or-nothing. Throws kCapacityViolation (state unchanged) if any residual
  // would go negative, kInvalidInput for malformed placements.
  void apply(const Placement &placement);
  // Exact inverse of apply. Throws kNotFound for unknown request ids.
  void release(const Placement &placement);
  void release(RequestId request_id);
  bool has_placement(RequestId request_id) const { return live_.count(request_id) != 0; }
  const std::map<RequestId, Placement> &placements() const { return live_; }

  std::size_t active_servers() const { return active_servers_; }
  std::size_t active_links() const { return active_links_; }

  // Server pairs currently joined by at least one inter-server virtual link.
  std::size_t active_server_pairs() const { return pair_load_.size(); }
  bool server_pair_active(ServerId a, ServerId b) const;

  // Rebuilds every residual and flag from capacities and the live placements
  // and compares with the incremental state. Empty string when consistent.
  std::string audit() const;

 private:
  struct Delta {
    std::vector<std::pair<std::size_t, std::int64_t>> server_units;
    std::vector<std::pair<LinkId, std::int64_t>> link_units;
  };
  Delta compute_delta(const Placement &placement) const;
  void sync_views(const Delta &delta);
  void adjust_flags(const Placement &placement, int sign);
  std::uint64_t pair_key(ServerId a, ServerId b) const;

  int k_ = 0;
  std::size_t num_resources_ = 0;
  std::size_t num_switches_ = 0;
  std::vector<Server> servers_;
  std::vector<PhysicalLink> links_;
  std::vector<std::vector<Adjacent>> adjacency_;
  std::unordered_map<std::uint64_t, LinkId> link_index_;
  std::vector<std::int64_t> server_capacity_units_;
  std::vector<std::int64_t> server_units_;
  std::vector<std::int64_t> link_capacity_units_;
  std::vector<std::int64_t> link_units_;
  std::map<RequestId, Placement> live_;
  std::unordered_map<std::uint64_t, int> pair_load_;
  std::size_t active_servers_ = 0;
  std::size_t active_links_ = 0;
};

// Standard three-tier fat-tree: (k/2)^2 core switches, k pods of k/2
// aggregation + k/2 edge switches, k^3/4 servers. Vertex numbering: servers,
// then core, then per pod aggregation followed by edge switches.
DataCenter build_fat_tree(int k, const Resources &server_capacity, double link_bandwidth);

double server_fragmentation(const DataCenter &dc);
double link_fragmentation(const DataCenter &dc);

// {k, servers:[{id,cpu,ram}], links:[{u,v,bw}]}
std::string dump_topology_json(const DataCenter &dc);
DataCenter load_topology_json(const std::string &text);

}  // namespace netsched
