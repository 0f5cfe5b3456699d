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

#include "netsched/topology.h"

#include <algorithm>
#include <queue>
#include <sstream>

#include "json.hpp"
#include "netsched/edge_index.h"
#include "netsched/error.h"

namespace netsched {

namespace {

std::uint64_t vertex_pair_key(VertexId a, VertexId b) {
  auto lo = static_cast<std::uint64_t>(std::min(a, b));
  auto hi = static_cast<std::uint64_t>(std::max(a, b));
  return (lo << 32) | hi;
}

}  // namespace

DataCenter::DataCenter(std::vector<Resources> server_capacity, std::size_t num_switches,
                       std::vector<LinkSpec> links, int k)
    : k_(k), num_switches_(num_switches) {
  if (server_capacity.empty()) {
    throw Error(ErrorCode::kInvalidParameter, "data center needs at least one server");
  }
  num_resources_ = server_capacity.front().size();
  if (num_resources_ == 0) {
    throw Error(ErrorCode::kInvalidParameter, "resource vectors must be non-empty");
  }
  servers_.reserve(server_capacity.size());
  for (std::size_t i = 0; i < server_capacity.size(); ++i) {
    const auto &cap = server_capacity[i];
    if (cap.size() != num_resources_) {
      throw Error(ErrorCode::kInvalidParameter, "server " + std::to_string(i) +
                                                    " has a resource vector of different size");
    }
    for (double c : cap) {
      if (!(c > 0.0) || !std::isfinite(c)) {
        throw Error(ErrorCode::kInvalidParameter,
                    "server " + std::to_string(i) + " capacity must be positive");
      }
      server_capacity_units_.push_back(to_units(c));
    }
    servers_.push_back(Server{static_cast<ServerId>(i), cap, cap, false, 0});
  }
  server_units_ = server_capacity_units_;

  const std::size_t n = num_vertices();
  adjacency_.resize(n);
  links_.reserve(links.size());
  for (const auto &spec : links) {
    if (spec.u == spec.v || spec.u < 0 || spec.v < 0 || static_cast<std::size_t>(spec.u) >= n ||
        static_cast<std::size_t>(spec.v) >= n) {
      throw Error(ErrorCode::kInvalidParameter, "link (" + std::to_string(spec.u) + "," +
                                                    std::to_string(spec.v) +
                                                    ") references an unknown vertex");
    }
    if (!(spec.bandwidth > 0.0) || !std::isfinite(spec.bandwidth)) {
      throw Error(ErrorCode::kInvalidParameter, "link bandwidth must be positive");
    }
    auto key = vertex_pair_key(spec.u, spec.v);
    if (link_index_.count(key) != 0) {
      throw Error(ErrorCode::kInvalidParameter, "duplicate link (" + std::to_string(spec.u) + "," +
                                                    std::to_string(spec.v) + ")");
    }
    auto id = static_cast<LinkId>(links_.size());
    PhysicalLink link;
    link.u = std::min(spec.u, spec.v);
    link.v = std::max(spec.u, spec.v);
    link.capacity = spec.bandwidth;
    link.residual = spec.bandwidth;
    links_.push_back(link);
    link_capacity_units_.push_back(to_units(spec.bandwidth));
    link_index_.emplace(key, id);
    adjacency_[static_cast<std::size_t>(link.u)].push_back({link.v, id});
    adjacency_[static_cast<std::size_t>(link.v)].push_back({link.u, id});
  }
  link_units_ = link_capacity_units_;
  for (auto &adj : adjacency_) {
    std::sort(adj.begin(), adj.end(),
              [](const Adjacent &a, const Adjacent &b) { return a.vertex < b.vertex; });
  }

  // Connectivity.
  std::vector<char> seen(n, 0);
  std::queue<VertexId> frontier;
  frontier.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    VertexId at = frontier.front();
    frontier.pop();
    for (const auto &next : adjacency_[static_cast<std::size_t>(at)]) {
      if (!seen[static_cast<std::size_t>(next.vertex)]) {
        seen[static_cast<std::size_t>(next.vertex)] = 1;
        ++reached;
        frontier.push(next.vertex);
      }
    }
  }
  if (reached != n) {
    throw Error(ErrorCode::kInvalidParameter, "data center graph is not connected");
  }
}

std::optional<LinkId> DataCenter::find_link(VertexId a, VertexId b) const {
  auto it = link_index_.find(vertex_pair_key(a, b));
  if (it == link_index_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t DataCenter::pair_key(ServerId a, ServerId b) const {
  return edge_index(a, b, static_cast<std::int64_t>(servers_.size()));
}

bool DataCenter::server_pair_active(ServerId a, ServerId b) const {
  if (a == b) return false;
  return pair_load_.count(pair_key(a, b)) != 0;
}

DataCenter::Delta DataCenter::compute_delta(const Placement &p) const {
  if (p.allocated_caps.size() != p.container_to_server.size()) {
    throw Error(ErrorCode::kInvalidInput, "placement container vectors differ in length");
  }
  if (p.allocated_bw.size() != p.vlink_to_path.size()) {
    throw Error(ErrorCode::kInvalidInput, "placement virtual-link vectors differ in length");
  }
  Delta delta;
  std::map<std::size_t, std::int64_t> per_slot;
  for (std::size_t i = 0; i < p.container_to_server.size(); ++i) {
    ServerId s = p.container_to_server[i];
    if (!is_server(s)) {
      throw Error(ErrorCode::kInvalidInput, "container " + std::to_string(i) +
                                                " mapped to unknown server " + std::to_string(s));
    }
    const auto &alloc = p.allocated_caps[i];
    if (alloc.size() != num_resources_) {
      throw Error(ErrorCode::kInvalidInput, "container " + std::to_string(i) +
                                                " allocation has the wrong resource count");
    }
    for (std::size_t r = 0; r < num_resources_; ++r) {
      if (!(alloc[r] >= 0.0) || !std::isfinite(alloc[r])) {
        throw Error(ErrorCode::kInvalidInput, "negative or non-finite allocation");
      }
      per_slot[static_cast<std::size_t>(s) * num_resources_ + r] += to_units(alloc[r]);
    }
  }
  std::map<LinkId, std::int64_t> per_link;
  for (std::size_t e = 0; e < p.vlink_to_path.size(); ++e) {
    const Route &route = p.vlink_to_path[e];
    double bw = p.allocated_bw[e];
    if (!(bw >= 0.0) || !std::isfinite(bw)) {
      throw Error(ErrorCode::kInvalidInput, "negative or non-finite bandwidth allocation");
    }
    for (LinkId l : route.links) {
      if (l < 0 || static_cast<std::size_t>(l) >= links_.size()) {
        throw Error(ErrorCode::kInvalidInput, "route references unknown link " + std::to_string(l));
      }
      per_link[l] += to_units(bw);
    }
  }
  delta.server_units.assign(per_slot.begin(), per_slot.end());
  delta.link_units.assign(per_link.begin(), per_link.end());
  return delta;
}

void DataCenter::apply(const Placement &placement) {
  if (live_.count(placement.request_id) != 0) {
    throw Error(ErrorCode::kInvalidInput,
                "request " + std::to_string(placement.request_id) + " is already placed");
  }
  Delta delta = compute_delta(placement);
  for (const auto &[slot, units] : delta.server_units) {
    if (server_units_[slot] - units < 0) {
      auto server = slot / num_resources_;
      auto r = slot % num_resources_;
      throw Error(ErrorCode::kCapacityViolation,
                  "server " + std::to_string(server) + " resource " + std::to_string(r) +
                      " residual " + std::to_string(from_units(server_units_[slot])) +
                      " < requested " + std::to_string(from_units(units)));
    }
  }
  for (const auto &[link, units] : delta.link_units) {
    if (link_units_[static_cast<std::size_t>(link)] - units < 0) {
      throw Error(ErrorCode::kCapacityViolation,
                  "link " + std::to_string(link) + " residual " +
                      std::to_string(from_units(link_units_[static_cast<std::size_t>(link)])) +
                      " < requested " + std::to_string(from_units(units)));
    }
  }
  for (const auto &[slot, units] : delta.server_units) server_units_[slot] -= units;
  for (const auto &[link, units] : delta.link_units) {
    link_units_[static_cast<std::size_t>(link)] -= units;
  }
  adjust_flags(placement, +1);
  live_.emplace(placement.request_id, placement);
  sync_views(delta);
}

void DataCenter::release(RequestId request_id) {
  auto it = live_.find(request_id);
  if (it == live_.end()) {
    throw Error(ErrorCode::kNotFound, "no live placement for request " + std::to_string(request_id));
  }
  Delta delta = compute_delta(it->second);
  for (const auto &[slot, units] : delta.server_units) server_units_[slot] += units;
  for (const auto &[link, units] : delta.link_units) {
    link_units_[static_cast<std::size_t>(link)] += units;
  }
  adjust_flags(it->second, -1);
  live_.erase(it);
  sync_views(delta);
}

void DataCenter::release(const Placement &placement) { release(placement.request_id); }

void DataCenter::adjust_flags(const Placement &p, int sign) {
  for (ServerId s : p.container_to_server) {
    auto &server = servers_[static_cast<std::size_t>(s)];
    bool was = server.hosted_containers > 0;
    server.hosted_containers += sign;
    bool now = server.hosted_containers > 0;
    server.active = now;
    if (was != now) {
      if (now) {
        ++active_servers_;
      } else {
        --active_servers_;
      }
    }
  }
  for (const Route &route : p.vlink_to_path) {
    for (LinkId l : route.links) {
      auto &link = links_[static_cast<std::size_t>(l)];
      bool was = link.hosted_vlinks > 0;
      link.hosted_vlinks += sign;
      bool now = link.hosted_vlinks > 0;
      link.active = now;
      if (was != now) {
        if (now) {
          ++active_links_;
        } else {
          --active_links_;
        }
      }
    }
    if (route.empty()) continue;
    ServerId a = route.vertices.front();
    ServerId b = route.vertices.back();
    if (!is_server(a) || !is_server(b) || a == b) continue;
    auto key = pair_key(a, b);
    int &load = pair_load_[key];
    load += sign;
    if (load == 0) pair_load_.erase(key);
  }
}

void DataCenter::sync_views(const Delta &delta) {
  for (const auto &entry : delta.server_units) {
    std::size_t slot = entry.first;
    servers_[slot / num_resources_].residual[slot % num_resources_] = from_units(server_units_[slot]);
  }
  for (const auto &entry : delta.link_units) {
    auto l = static_cast<std::size_t>(entry.first);
    links_[l].residual = from_units(link_units_[l]);
  }
}

std::string DataCenter::audit() const {
  std::vector<std::int64_t> server_units = server_capacity_units_;
  std::vector<std::int64_t> link_units = link_capacity_units_;
  std::vector<int> containers(servers_.size(), 0);
  std::vector<int> vlinks(links_.size(), 0);
  for (const auto &[id, p] : live_) {
    Delta delta = compute_delta(p);
    for (const auto &[slot, units] : delta.server_units) server_units[slot] -= units;
    for (const auto &[link, units] : delta.link_units) {
      link_units[static_cast<std::size_t>(link)] -= units;
    }
    for (ServerId s : p.container_to_server) ++containers[static_cast<std::size_t>(s)];
    for (const Route &route : p.vlink_to_path) {
      for (LinkId l : route.links) ++vlinks[static_cast<std::size_t>(l)];
    }
  }
  std::ostringstream out;
  if (server_units != server_units_) out << "server residual ledger drifted; ";
  if (link_units != link_units_) out << "link residual ledger drifted; ";
  for (std::size_t s = 0; s < servers_.size(); ++s) {
    const auto &server = servers_[s];
    if (server.active != (containers[s] > 0) || server.hosted_containers != containers[s]) {
      out << "server " << s << " activity mismatch; ";
    }
    for (std::size_t r = 0; r < num_resources_; ++r) {
      if (server.residual[r] < 0.0 || server.residual[r] > server.capacity[r]) {
        out << "server " << s << " residual out of range; ";
      }
    }
  }
  for (std::size_t l = 0; l < links_.size(); ++l) {
    const auto &link = links_[l];
    if (link.active != (vlinks[l] > 0) || link.hosted_vlinks != vlinks[l]) {
      out << "link " << l << " activity mismatch; ";
    }
    if (link.residual < 0.0 || link.residual > link.capacity) {
      out << "link " << l << " residual out of range; ";
    }
  }
  return out.str();
}

DataCenter build_fat_tree(int k, const Resources &server_capacity, double link_bandwidth) {
  if (k < 2 || k % 2 != 0) {
    throw Error(ErrorCode::kInvalidParameter,
                "fat-tree arity must be an even integer >= 2, got " + std::to_string(k));
  }
  if (!(link_bandwidth > 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "link bandwidth must be positive");
  }
  const int half = k / 2;
  const int num_servers = k * k * k / 4;
  const int num_core = half * half;
  const int num_switches = num_core + k * k;
  const int core_base = num_servers;
  const int pod_base = core_base + num_core;

  std::vector<LinkSpec> links;
  links.reserve(static_cast<std::size_t>(3 * num_servers));
  for (int pod = 0; pod < k; ++pod) {
    const int agg0 = pod_base + pod * k;
    const int edge0 = agg0 + half;
    for (int e = 0; e < half; ++e) {
      for (int h = 0; h < half; ++h) {
        int server = (pod * half + e) * half + h;
        links.push_back({server, edge0 + e, link_bandwidth});
      }
    }
    for (int e = 0; e < half; ++e) {
      for (int a = 0; a < half; ++a) links.push_back({edge0 + e, agg0 + a, link_bandwidth});
    }
    for (int a = 0; a < half; ++a) {
      for (int c = 0; c < half; ++c) {
        links.push_back({agg0 + a, core_base + a * half + c, link_bandwidth});
      }
    }
  }
  std::vector<Resources> caps(static_cast<std::size_t>(num_servers), server_capacity);
  return DataCenter(std::move(caps), static_cast<std::size_t>(num_switches), std::move(links), k);
}

double server_fragmentation(const DataCenter &dc) {
  return static_cast<double>(dc.active_servers()) / static_cast<double>(dc.num_servers());
}

double link_fragmentation(const DataCenter &dc) {
  if (dc.links().empty()) return 0.0;
  return static_cast<double>(dc.active_links()) / static_cast<double>(dc.links().size());
}

std::string dump_topology_json(const DataCenter &dc) {
  nlohmann::ordered_json doc;
  doc["k"] = dc.k();
  auto servers = nlohmann::ordered_json::array();
  for (const auto &s : dc.servers()) {
    nlohmann::ordered_json row;
    row["id"] = s.id;
    row["cpu"] = s.capacity[kCpu];
    row["ram"] = s.capacity.size() > kRam ? s.capacity[kRam] : 0.0;
    servers.push_back(std::move(row));
  }
  doc["servers"] = std::move(servers);
  auto links = nlohmann::ordered_json::array();
  for (const auto &l : dc.links()) {
    nlohmann::ordered_json row;
    row["u"] = l.u;
    row["v"] = l.v;
    row["bw"] = l.capacity;
    links.push_back(std::move(row));
  }
  doc["links"] = std::move(links);
  return doc.dump(2);
}

DataCenter load_topology_json(const std::string &text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kInvalidInput, std::string("topology JSON: ") + e.what());
  }
  try {
    int k = doc.value("k", 0);
    const auto &servers = doc.at("servers");
    std::vector<Resources> caps(servers.size());
    std::vector<char> seen(servers.size(), 0);
    for (const auto &row : servers) {
      auto id = row.at("id").get<std::int64_t>();
      if (id < 0 || static_cast<std::size_t>(id) >= servers.size() || seen[id]) {
        throw Error(ErrorCode::kInvalidInput, "server ids must be dense and unique");
      }
      seen[id] = 1;
      caps[static_cast<std::size_t>(id)] = {row.at("cpu").get<double>(), row.at("ram").get<double>()};
    }
    std::vector<LinkSpec> links;
    VertexId max_vertex = static_cast<VertexId>(servers.size()) - 1;
    for (const auto &row : doc.at("links")) {
      LinkSpec spec{row.at("u").get<VertexId>(), row.at("v").get<VertexId>(),
                    row.at("bw").get<double>()};
      max_vertex = std::max({max_vertex, spec.u, spec.v});
      links.push_back(spec);
    }
    auto num_switches = static_cast<std::size_t>(max_vertex + 1) - servers.size();
    return DataCenter(std::move(caps), num_switches, std::move(links), k);
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kInvalidInput, std::string("topology JSON: ") + e.what());
  }
}

}  // namespace netsched
