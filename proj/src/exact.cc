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

#include "netsched/exact.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "netsched/error.h"
#include "netsched/pathing.h"

namespace netsched {

namespace {

constexpr double kIntervalTolerance = 1e-9;
// Slack between a bound and a leaf objective that covers summation order.
constexpr double kBoundSlack = 1e-12;

std::string fmt(double x) {
  std::ostringstream out;
  out << x;
  return out.str();
}

std::size_t logical_edge_count(std::size_t num_servers) {
  return num_servers < 2 ? 0 : num_servers * (num_servers - 1) / 2;
}

double fragmentation_value(std::size_t servers, std::size_t pairs, std::size_t num_servers) {
  double term = 0.0;
  if (num_servers > 0) term += static_cast<double>(servers) / static_cast<double>(num_servers);
  std::size_t edges = logical_edge_count(num_servers);
  if (edges > 0) term += static_cast<double>(pairs) / static_cast<double>(edges);
  return term;
}

ObjectiveBreakdown make_breakdown(double alpha, double utility, std::size_t servers,
                                  std::size_t pairs, std::size_t num_servers) {
  ObjectiveBreakdown out;
  out.alpha = alpha;
  out.utility_term = utility;
  out.fragmentation_term = fragmentation_value(servers, pairs, num_servers);
  out.total = alpha * out.utility_term + (1.0 - alpha) * out.fragmentation_term;
  out.active_servers = servers;
  out.active_logical_edges = pairs;
  return out;
}

double link_utility(LinkUtilityMode mode, double bw, const Route &route, const VirtualLink &vlink) {
  double u = utility_link(bw, vlink);
  if (mode == LinkUtilityMode::kPhysicalHopSum && route.hops() > 1) {
    u *= static_cast<double>(route.hops());
  }
  return u;
}

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::kInvalidParameter, "alpha must lie in [0,1]");
  }
}

}  // namespace

double utility_container(const Resources &allocated, const ContainerSpec &spec) {
  if (allocated.size() != spec.c_max.size() || spec.c_min.size() != spec.c_max.size() ||
      allocated.empty()) {
    throw Error(ErrorCode::kInvalidInput, "allocation and container spec differ in size");
  }
  double sum = 0.0;
  for (std::size_t r = 0; r < allocated.size(); ++r) {
    if (allocated[r] < spec.c_min[r] - kIntervalTolerance ||
        allocated[r] > spec.c_max[r] + kIntervalTolerance) {
      throw Error(ErrorCode::kInvalidInput, "allocation " + fmt(allocated[r]) + " of resource " +
                                                std::to_string(r) + " outside [" +
                                                fmt(spec.c_min[r]) + ", " + fmt(spec.c_max[r]) + "]");
    }
    sum += allocated[r] / spec.c_max[r];
  }
  return sum / static_cast<double>(allocated.size());
}

double utility_link(double allocated_bw, const VirtualLink &vlink) {
  if (allocated_bw < vlink.bw_min - kIntervalTolerance ||
      allocated_bw > vlink.bw_max + kIntervalTolerance) {
    throw Error(ErrorCode::kInvalidInput, "bandwidth " + fmt(allocated_bw) + " outside [" +
                                              fmt(vlink.bw_min) + ", " + fmt(vlink.bw_max) + "]");
  }
  return allocated_bw / vlink.bw_max;
}

std::string objective_json(const ObjectiveBreakdown &o) {
  nlohmann::ordered_json j;
  j["alpha"] = o.alpha;
  j["utility_term"] = o.utility_term;
  j["fragmentation_term"] = o.fragmentation_term;
  j["total"] = o.total;
  j["active_servers"] = o.active_servers;
  j["active_logical_edges"] = o.active_logical_edges;
  return j.dump();
}

std::vector<Violation> check_constraints(const DataCenter &dc,
                                         const std::vector<PlacedRequest> &placed) {
  std::vector<Violation> out;
  const std::size_t num_r = dc.num_resources();
  std::vector<std::int64_t> server_use(dc.num_servers() * num_r, 0);
  std::vector<std::int64_t> link_use(dc.links().size(), 0);

  for (const auto &[req, p] : placed) {
    if (req == nullptr || p == nullptr) {
      throw Error(ErrorCode::kInvalidInput, "null request or placement");
    }
    const std::string tag = "request " + std::to_string(req->id) + ": ";
    const std::size_t n = req->containers.size();
    if (p->container_to_server.size() != n || p->allocated_caps.size() != n) {
      out.push_back({"single-host", tag + "placement does not map every container exactly once"});
      continue;
    }
    bool hosts_ok = true;
    for (std::size_t i = 0; i < n; ++i) {
      ServerId s = p->container_to_server[i];
      if (!dc.is_server(s)) {
        out.push_back({"single-host", tag + "container " + std::to_string(i) + " has no valid host"});
        hosts_ok = false;
        continue;
      }
      const auto &spec = req->containers[i];
      const auto &alloc = p->allocated_caps[i];
      if (alloc.size() != num_r || spec.c_min.size() != num_r) {
        out.push_back({"container-interval", tag + "container " + std::to_string(i) + " has the wrong resource count"});
        continue;
      }
      for (std::size_t r = 0; r < num_r; ++r) {
        if (alloc[r] < spec.c_min[r] - kIntervalTolerance ||
            alloc[r] > spec.c_max[r] + kIntervalTolerance) {
          out.push_back({"container-interval", tag + "container " + std::to_string(i) + " resource " +
                                    std::to_string(r) + " allocation " + fmt(alloc[r]) +
                                    " outside [" + fmt(spec.c_min[r]) + ", " +
                                    fmt(spec.c_max[r]) + "]"});
        }
        server_use[static_cast<std::size_t>(s) * num_r + r] += to_units(alloc[r]);
      }
    }
    if (!hosts_ok) continue;

    for (std::size_t g = 0; g < req->pods.size(); ++g) {
      const auto &pod = req->pods[g];
      for (int c : pod) {
        if (p->container_to_server[static_cast<std::size_t>(c)] !=
            p->container_to_server[static_cast<std::size_t>(pod.front())]) {
          out.push_back({"pod-integrity", tag + "pod " + std::to_string(g) + " is split across servers"});
          break;
        }
      }
    }

    if (p->vlink_to_path.size() != req->vlinks.size() ||
        p->allocated_bw.size() != req->vlinks.size()) {
      out.push_back({"endpoint", tag + "placement does not map every virtual link"});
      continue;
    }
    for (std::size_t e = 0; e < req->vlinks.size(); ++e) {
      const auto &vl = req->vlinks[e];
      const auto &route = p->vlink_to_path[e];
      const std::string ltag = tag + "vlink " + std::to_string(e) + " ";
      double bw = p->allocated_bw[e];
      if (bw < vl.bw_min - kIntervalTolerance || bw > vl.bw_max + kIntervalTolerance) {
        out.push_back({"bandwidth-interval", ltag + "bandwidth " + fmt(bw) + " outside [" + fmt(vl.bw_min) +
                                  ", " + fmt(vl.bw_max) + "]"});
      }
      ServerId a = p->container_to_server[static_cast<std::size_t>(vl.i)];
      ServerId b = p->container_to_server[static_cast<std::size_t>(vl.j)];
      if (a == b) {
        if (!route.empty()) out.push_back({"endpoint", ltag + "co-located but routed"});
        continue;
      }
      if (route.empty() || route.vertices.size() != route.links.size() + 1) {
        out.push_back({"endpoint", ltag + "has no route between its hosts"});
        continue;
      }
      bool joins = (route.vertices.front() == a && route.vertices.back() == b) ||
                   (route.vertices.front() == b && route.vertices.back() == a);
      bool chained = true;
      for (std::size_t h = 0; h < route.links.size(); ++h) {
        LinkId l = route.links[h];
        if (l < 0 || static_cast<std::size_t>(l) >= dc.links().size()) {
          chained = false;
          break;
        }
        const auto &link = dc.link(l);
        VertexId x = route.vertices[h];
        VertexId y = route.vertices[h + 1];
        if (!((link.u == x && link.v == y) || (link.u == y && link.v == x))) {
          chained = false;
          break;
        }
      }
      if (!joins || !chained) {
        out.push_back({"endpoint", ltag + "route does not join its hosts"});
        continue;
      }
      for (LinkId l : route.links) link_use[static_cast<std::size_t>(l)] += to_units(bw);
    }
  }

  for (std::size_t s = 0; s < dc.num_servers(); ++s) {
    for (std::size_t r = 0; r < num_r; ++r) {
      if (server_use[s * num_r + r] > dc.server_residual_units(static_cast<ServerId>(s), r)) {
        out.push_back({"server-capacity", "server " + std::to_string(s) + " resource " + std::to_string(r) +
                                  " over capacity (" + fmt(from_units(server_use[s * num_r + r])) +
                                  " > " +
                                  fmt(from_units(dc.server_residual_units(static_cast<ServerId>(s), r))) +
                                  ")"});
      }
    }
  }
  for (std::size_t l = 0; l < link_use.size(); ++l) {
    if (link_use[l] > dc.link_residual_units(static_cast<LinkId>(l))) {
      out.push_back({"link-capacity", "link " + std::to_string(l) + " over capacity (" +
                                fmt(from_units(link_use[l])) + " > " +
                                fmt(from_units(dc.link_residual_units(static_cast<LinkId>(l)))) + ")"});
    }
  }
  return out;
}

ObjectiveBreakdown objective(const DataCenter &dc, const std::vector<PlacedRequest> &placed,
                             double alpha, LinkUtilityMode mode) {
  check_alpha(alpha);
  auto violations = check_constraints(dc, placed);
  if (!violations.empty()) {
    throw Error(ErrorCode::kConstraintViolation,
                violations.front().constraint + ": " + violations.front().detail);
  }
  const std::size_t num_s = dc.num_servers();
  double utility = 0.0;
  std::set<ServerId> new_servers;
  std::set<std::uint64_t> new_pairs;
  for (const auto &[req, p] : placed) {
    for (std::size_t i = 0; i < req->containers.size(); ++i) {
      utility += 1.0 - utility_container(p->allocated_caps[i], req->containers[i]);
      ServerId s = p->container_to_server[i];
      if (!dc.server(s).active) new_servers.insert(s);
    }
    for (std::size_t e = 0; e < req->vlinks.size(); ++e) {
      const auto &vl = req->vlinks[e];
      utility += 1.0 - link_utility(mode, p->allocated_bw[e], p->vlink_to_path[e], vl);
      ServerId a = p->container_to_server[static_cast<std::size_t>(vl.i)];
      ServerId b = p->container_to_server[static_cast<std::size_t>(vl.j)];
      if (a != b && !dc.server_pair_active(a, b)) {
        new_pairs.insert(edge_index(a, b, static_cast<std::int64_t>(num_s)));
      }
    }
  }
  return make_breakdown(alpha, utility, dc.active_servers() + new_servers.size(),
                        dc.active_server_pairs() + new_pairs.size(), num_s);
}

MilpModel build_milp_model(const DataCenter &dc, const Request &req, double alpha) {
  check_alpha(alpha);
  auto problems = validate_request(req);
  if (!problems.empty()) throw Error(ErrorCode::kInvalidInput, problems.front());
  MilpModel m;
  m.request = req;
  m.request.finalize();
  m.alpha = alpha;
  m.num_servers = dc.num_servers();
  m.num_resources = dc.num_resources();
  std::set<std::pair<int, int>> seen;
  for (std::size_t e = 0; e < req.vlinks.size(); ++e) {
    const auto &vl = m.request.vlinks[e];
    if (!seen.insert({std::min(vl.i, vl.j), std::max(vl.i, vl.j)}).second) {
      throw Error(ErrorCode::kInvalidInput, "vlink " + std::to_string(e) + ": duplicate container pair");
    }
    if (!vl.intra_pod) m.routed_vlinks.push_back(static_cast<int>(e));
  }
  for (const auto &c : req.containers) {
    if (c.c_min.size() != m.num_resources) {
      throw Error(ErrorCode::kInvalidInput, "request resource count does not match the data center");
    }
  }
  for (const auto &server : dc.servers()) {
    m.server_residual.push_back(server.residual);
    m.server_active.push_back(server.active);
  }
  for (std::size_t a = 0; a < m.num_servers; ++a) {
    for (std::size_t b = a + 1; b < m.num_servers; ++b) {
      auto path = widest_shortest_path(dc, static_cast<ServerId>(a), static_cast<ServerId>(b), 0.0);
      if (!path) continue;
      LogicalEdge edge;
      edge.a = static_cast<ServerId>(a);
      edge.b = static_cast<ServerId>(b);
      edge.path = std::move(path->route);
      edge.capacity = path->bottleneck;
      edge.active = dc.server_pair_active(edge.a, edge.b);
      m.edges.push_back(std::move(edge));
    }
  }
  return m;
}

struct ExactEvaluator::Cache {
  std::unordered_map<std::uint64_t, LogicalEdge> edges;
  std::vector<std::vector<std::int64_t>> cmin_units;
  std::vector<std::vector<std::int64_t>> span_units;
  std::vector<std::int64_t> bw_min_units;
  std::vector<std::int64_t> bw_span_units;
  // Routed virtual links per pod: (vlink, other pod).
  std::vector<std::vector<std::pair<int, int>>> pod_links;
  // Container order per resource for the fill: ascending c_max, then index.
  std::vector<std::vector<int>> fill_order;
  std::vector<int> link_fill_order;
};

ExactEvaluator::ExactEvaluator(const DataCenter &dc, const Request &req, double alpha,
                               LinkUtilityMode mode)
    : dc_(dc), req_(req), alpha_(alpha), mode_(mode), cache_(std::make_unique<Cache>()) {
  check_alpha(alpha);
  auto problems = validate_request(req_);
  if (!problems.empty()) throw Error(ErrorCode::kInvalidInput, problems.front());
  req_.finalize();
  const std::size_t num_r = dc.num_resources();
  const std::size_t n = req_.containers.size();
  auto &c = *cache_;
  for (const auto &spec : req_.containers) {
    if (spec.c_min.size() != num_r) {
      throw Error(ErrorCode::kInvalidInput, "request resource count does not match the data center");
    }
    std::vector<std::int64_t> lo(num_r);
    std::vector<std::int64_t> span(num_r);
    for (std::size_t r = 0; r < num_r; ++r) {
      lo[r] = to_units(spec.c_min[r]);
      span[r] = to_units(spec.c_max[r]) - lo[r];
    }
    c.cmin_units.push_back(std::move(lo));
    c.span_units.push_back(std::move(span));
  }
  c.fill_order.resize(num_r);
  for (std::size_t r = 0; r < num_r; ++r) {
    auto &order = c.fill_order[r];
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return req_.containers[static_cast<std::size_t>(a)].c_max[r] <
             req_.containers[static_cast<std::size_t>(b)].c_max[r];
    });
  }
  c.pod_links.resize(req_.pods.size());
  for (std::size_t e = 0; e < req_.vlinks.size(); ++e) {
    const auto &vl = req_.vlinks[e];
    c.bw_min_units.push_back(to_units(vl.bw_min));
    c.bw_span_units.push_back(to_units(vl.bw_max) - to_units(vl.bw_min));
    if (vl.intra_pod) continue;
    int gi = req_.pod_of[static_cast<std::size_t>(vl.i)];
    int gj = req_.pod_of[static_cast<std::size_t>(vl.j)];
    c.pod_links[static_cast<std::size_t>(gi)].push_back({static_cast<int>(e), gj});
    c.pod_links[static_cast<std::size_t>(gj)].push_back({static_cast<int>(e), gi});
    c.link_fill_order.push_back(static_cast<int>(e));
  }
  std::stable_sort(c.link_fill_order.begin(), c.link_fill_order.end(), [&](int a, int b) {
    return req_.vlinks[static_cast<std::size_t>(a)].bw_max <
           req_.vlinks[static_cast<std::size_t>(b)].bw_max;
  });
}

ExactEvaluator::~ExactEvaluator() = default;

const LogicalEdge &ExactEvaluator::logical_edge(ServerId a, ServerId b) const {
  if (a == b || !dc_.is_server(a) || !dc_.is_server(b)) {
    throw Error(ErrorCode::kInvalidParameter, "logical edges join two distinct servers");
  }
  ServerId lo = std::min(a, b);
  ServerId hi = std::max(a, b);
  auto key = edge_index(lo, hi, static_cast<std::int64_t>(dc_.num_servers()));
  auto it = cache_->edges.find(key);
  if (it != cache_->edges.end()) return it->second;
  auto path = widest_shortest_path(dc_, lo, hi, 0.0);
  if (!path) {
    throw Error(ErrorCode::kNotFound, "no physical path between servers " + std::to_string(lo) +
                                          " and " + std::to_string(hi));
  }
  LogicalEdge edge;
  edge.a = lo;
  edge.b = hi;
  edge.path = std::move(path->route);
  edge.capacity = path->bottleneck;
  edge.active = dc_.server_pair_active(lo, hi);
  return cache_->edges.emplace(key, std::move(edge)).first->second;
}

namespace {

// Raise (in units) granted to each container above its minimum when the
// leftover of every server resource goes to the smallest maxima first.
// Containers hosted on server -1 are ignored.
std::vector<std::vector<std::int64_t>> fill_containers(
    const DataCenter &dc, const std::vector<std::vector<std::int64_t>> &cmin,
    const std::vector<std::vector<std::int64_t>> &span, const std::vector<std::vector<int>> &order,
    const std::vector<ServerId> &host) {
  const std::size_t num_r = dc.num_resources();
  std::vector<std::vector<std::int64_t>> raise(host.size(), std::vector<std::int64_t>(num_r, 0));
  std::unordered_map<ServerId, std::vector<std::int64_t>> leftover;
  for (std::size_t i = 0; i < host.size(); ++i) {
    if (host[i] < 0) continue;
    auto [it, fresh] = leftover.try_emplace(host[i], num_r, 0);
    if (fresh) {
      for (std::size_t r = 0; r < num_r; ++r) it->second[r] = dc.server_residual_units(host[i], r);
    }
    for (std::size_t r = 0; r < num_r; ++r) it->second[r] -= cmin[i][r];
  }
  for (std::size_t r = 0; r < num_r; ++r) {
    for (int i : order[r]) {
      auto idx = static_cast<std::size_t>(i);
      if (host[idx] < 0) continue;
      auto &left = leftover[host[idx]][r];
      std::int64_t take = std::min(span[idx][r], std::max<std::int64_t>(left, 0));
      raise[idx][r] = take;
      left -= take;
    }
  }
  return raise;
}

double raised_value(double lo, double hi, std::int64_t take, std::int64_t span) {
  if (take <= 0) return lo;
  if (take >= span) return hi;
  return lo + from_units(take);
}

Resources container_allocation(const ContainerSpec &spec, const std::vector<std::int64_t> &take,
                               const std::vector<std::int64_t> &span) {
  Resources out(spec.c_min.size());
  for (std::size_t r = 0; r < out.size(); ++r) {
    out[r] = raised_value(spec.c_min[r], spec.c_max[r], take[r], span[r]);
  }
  return out;
}

}  // namespace

std::optional<ExactCandidate> ExactEvaluator::evaluate(
    const std::vector<ServerId> &pod_to_server) const {
  const auto &c = *cache_;
  const std::size_t num_r = dc_.num_resources();
  const std::size_t num_s = dc_.num_servers();
  const std::size_t n = req_.containers.size();
  if (pod_to_server.size() != req_.pods.size()) {
    throw Error(ErrorCode::kInvalidInput, "assignment length differs from the pod count");
  }
  for (ServerId s : pod_to_server) {
    if (!dc_.is_server(s)) throw Error(ErrorCode::kInvalidInput, "assignment names an unknown server");
  }

  ExactCandidate out;
  Placement &p = out.placement;
  p.request_id = req_.id;
  p.container_to_server.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    p.container_to_server[i] = pod_to_server[static_cast<std::size_t>(req_.pod_of[i])];
  }

  std::unordered_map<ServerId, std::vector<std::int64_t>> demand;
  for (std::size_t i = 0; i < n; ++i) {
    auto &d = demand.try_emplace(p.container_to_server[i], num_r, 0).first->second;
    for (std::size_t r = 0; r < num_r; ++r) d[r] += c.cmin_units[i][r];
  }
  for (const auto &[s, d] : demand) {
    for (std::size_t r = 0; r < num_r; ++r) {
      if (d[r] > dc_.server_residual_units(s, r)) return std::nullopt;
    }
  }

  const std::size_t num_e = req_.vlinks.size();
  p.vlink_to_path.assign(num_e, Route{});
  p.allocated_bw.assign(num_e, 0.0);
  std::unordered_map<LinkId, std::int64_t> link_left;
  for (std::size_t e = 0; e < num_e; ++e) {
    const auto &vl = req_.vlinks[e];
    if (vl.intra_pod) {
      p.allocated_bw[e] = vl.bw_max;
      continue;
    }
    ServerId a = p.container_to_server[static_cast<std::size_t>(vl.i)];
    ServerId b = p.container_to_server[static_cast<std::size_t>(vl.j)];
    if (a == b) return std::nullopt;
    p.vlink_to_path[e] = logical_edge(a, b).path;
    for (LinkId l : p.vlink_to_path[e].links) {
      auto [it, fresh] = link_left.try_emplace(l, 0);
      if (fresh) it->second = dc_.link_residual_units(l);
      it->second -= c.bw_min_units[e];
    }
  }
  for (const auto &[l, left] : link_left) {
    if (left < 0) return std::nullopt;
  }

  std::vector<std::vector<std::int64_t>> raise(n, std::vector<std::int64_t>(num_r, 0));
  std::vector<std::int64_t> bw_raise(num_e, 0);
  if (alpha_ > 0.0) {
    raise = fill_containers(dc_, c.cmin_units, c.span_units, c.fill_order, p.container_to_server);
    for (int e : c.link_fill_order) {
      auto idx = static_cast<std::size_t>(e);
      std::int64_t take = c.bw_span_units[idx];
      for (LinkId l : p.vlink_to_path[idx].links) take = std::min(take, link_left[l]);
      take = std::max<std::int64_t>(take, 0);
      for (LinkId l : p.vlink_to_path[idx].links) link_left[l] -= take;
      bw_raise[idx] = take;
    }
  }

  p.allocated_caps.resize(n);
  double utility = 0.0;
  std::unordered_set<ServerId> new_servers;
  for (std::size_t i = 0; i < n; ++i) {
    p.allocated_caps[i] = container_allocation(req_.containers[i], raise[i], c.span_units[i]);
    utility += 1.0 - utility_container(p.allocated_caps[i], req_.containers[i]);
    if (!dc_.server(p.container_to_server[i]).active) new_servers.insert(p.container_to_server[i]);
  }
  std::unordered_set<std::uint64_t> new_pairs;
  for (std::size_t e = 0; e < num_e; ++e) {
    const auto &vl = req_.vlinks[e];
    if (!vl.intra_pod) {
      p.allocated_bw[e] = raised_value(vl.bw_min, vl.bw_max, bw_raise[e], c.bw_span_units[e]);
      ServerId a = p.container_to_server[static_cast<std::size_t>(vl.i)];
      ServerId b = p.container_to_server[static_cast<std::size_t>(vl.j)];
      if (!dc_.server_pair_active(a, b)) {
        new_pairs.insert(edge_index(a, b, static_cast<std::int64_t>(num_s)));
      }
    }
    utility += 1.0 - link_utility(mode_, p.allocated_bw[e], p.vlink_to_path[e], vl);
  }
  out.objective = make_breakdown(alpha_, utility, dc_.active_servers() + new_servers.size(),
                                 dc_.active_server_pairs() + new_pairs.size(), num_s);
  return out;
}

class ExactSearch {
 public:
  ExactSearch(const ExactEvaluator &ev, const ExactOptions &options)
      : ev_(ev),
        dc_(ev.dc_),
        req_(ev.req_),
        cache_(*ev.cache_),
        options_(options),
        num_r_(dc_.num_resources()),
        num_s_(dc_.num_servers()) {
    assign_.assign(req_.pods.size(), -1);
    host_.assign(req_.containers.size(), -1);
    server_units_.assign(num_s_ * num_r_, 0);
    server_pods_.assign(num_s_, 0);
    link_units_.assign(dc_.links().size(), 0);
    pod_units_.resize(req_.pods.size());
    for (std::size_t g = 0; g < req_.pods.size(); ++g) {
      pod_units_[g].assign(num_r_, 0);
      for (int i : req_.pods[g]) {
        for (std::size_t r = 0; r < num_r_; ++r) {
          pod_units_[g][r] += cache_.cmin_units[static_cast<std::size_t>(i)][r];
        }
      }
    }
  }

  void run(ExactResult &out) {
    out_ = &out;
    dfs(0);
  }

 private:
  void dfs(std::size_t g) {
    ++out_->nodes;
    if (g == req_.pods.size()) {
      ++out_->leaves;
      auto candidate = ev_.evaluate(assign_);
      if (candidate && (!out_->placement ||
                        candidate->objective.total < out_->objective.total - kObjectiveTieTolerance)) {
        out_->placement = std::move(candidate->placement);
        out_->objective = candidate->objective;
        out_->pod_to_server = assign_;
      }
      return;
    }
    for (std::size_t s = 0; s < num_s_; ++s) {
      if (place(g, static_cast<ServerId>(s))) {
        if (!options_.prune || !out_->placement ||
            lower_bound() - kBoundSlack < out_->objective.total - kObjectiveTieTolerance) {
          dfs(g + 1);
        }
      }
      unplace(g, static_cast<ServerId>(s));
    }
  }

  // Records the pod on s; false when the partial assignment is already
  // infeasible. unplace() must follow either way.
  bool place(std::size_t g, ServerId s) {
    assign_[g] = s;
    for (int i : req_.pods[g]) host_[static_cast<std::size_t>(i)] = s;
    if (server_pods_[static_cast<std::size_t>(s)]++ == 0 && !dc_.server(s).active) ++new_servers_;
    bool ok = true;
    for (std::size_t r = 0; r < num_r_; ++r) {
      auto &used = server_units_[static_cast<std::size_t>(s) * num_r_ + r];
      used += pod_units_[g][r];
      if (used > dc_.server_residual_units(s, r)) ok = false;
    }
    for (const auto &[e, other] : cache_.pod_links[g]) {
      if (static_cast<std::size_t>(other) >= g) continue;
      ServerId t = assign_[static_cast<std::size_t>(other)];
      if (t == s) {
        ok = false;
        continue;
      }
      auto key = edge_index(s, t, static_cast<std::int64_t>(num_s_));
      if (pair_count_[key]++ == 0 && !dc_.server_pair_active(s, t)) ++new_pairs_;
      for (LinkId l : ev_.logical_edge(s, t).path.links) {
        auto &used = link_units_[static_cast<std::size_t>(l)];
        used += cache_.bw_min_units[static_cast<std::size_t>(e)];
        if (used > dc_.link_residual_units(l)) ok = false;
      }
    }
    return ok;
  }

  void unplace(std::size_t g, ServerId s) {
    for (const auto &[e, other] : cache_.pod_links[g]) {
      if (static_cast<std::size_t>(other) >= g) continue;
      ServerId t = assign_[static_cast<std::size_t>(other)];
      if (t == s) continue;
      auto key = edge_index(s, t, static_cast<std::int64_t>(num_s_));
      if (--pair_count_[key] == 0 && !dc_.server_pair_active(s, t)) --new_pairs_;
      for (LinkId l : ev_.logical_edge(s, t).path.links) {
        link_units_[static_cast<std::size_t>(l)] -= cache_.bw_min_units[static_cast<std::size_t>(e)];
      }
    }
    for (std::size_t r = 0; r < num_r_; ++r) {
      server_units_[static_cast<std::size_t>(s) * num_r_ + r] -= pod_units_[g][r];
    }
    if (--server_pods_[static_cast<std::size_t>(s)] == 0 && !dc_.server(s).active) --new_servers_;
    for (int i : req_.pods[g]) host_[static_cast<std::size_t>(i)] = -1;
    assign_[g] = -1;
  }

  // Fragmentation only grows with further pods, and the containers placed so
  // far cannot do better than their fill without the remaining pods.
  double lower_bound() const {
    double utility = 0.0;
    const double alpha = ev_.alpha_;
    if (alpha > 0.0) {
      auto raise = fill_containers(dc_, cache_.cmin_units, cache_.span_units, cache_.fill_order, host_);
      for (std::size_t i = 0; i < host_.size(); ++i) {
        if (host_[i] < 0) continue;
        auto alloc = container_allocation(req_.containers[i], raise[i], cache_.span_units[i]);
        utility += 1.0 - utility_container(alloc, req_.containers[i]);
      }
    }
    return make_breakdown(alpha, utility, dc_.active_servers() + new_servers_,
                          dc_.active_server_pairs() + new_pairs_, num_s_)
        .total;
  }

  const ExactEvaluator &ev_;
  const DataCenter &dc_;
  const Request &req_;
  const ExactEvaluator::Cache &cache_;
  ExactOptions options_;
  std::size_t num_r_;
  std::size_t num_s_;
  ExactResult *out_ = nullptr;

  std::vector<ServerId> assign_;
  std::vector<ServerId> host_;
  std::vector<std::vector<std::int64_t>> pod_units_;
  std::vector<std::int64_t> server_units_;
  std::vector<int> server_pods_;
  std::vector<std::int64_t> link_units_;
  std::unordered_map<std::uint64_t, int> pair_count_;
  std::size_t new_servers_ = 0;
  std::size_t new_pairs_ = 0;
};

ExactResult solve_exact(const DataCenter &dc, const Request &req, double alpha,
                        const ExactOptions &options) {
  ExactEvaluator ev(dc, req, alpha, options.link_mode);
  double space = std::pow(static_cast<double>(dc.num_servers()), static_cast<double>(req.pods.size()));
  if (space > options.max_assignments) {
    throw Error(ErrorCode::kTooLarge,
                "assignment space " + fmt(space) + " exceeds the exact-solver bound " +
                    fmt(options.max_assignments) + "; export the model with export_lp instead");
  }
  ExactResult out;
  ExactSearch search(ev, options);
  search.run(out);
  return out;
}

}  // namespace netsched
