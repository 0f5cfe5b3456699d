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

#include "netsched/workload.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "netsched/error.h"

namespace netsched {

void Request::finalize() {
  pod_of.assign(containers.size(), -1);
  for (std::size_t g = 0; g < pods.size(); ++g) {
    for (int c : pods[g]) {
      if (c >= 0 && static_cast<std::size_t>(c) < containers.size()) {
        pod_of[static_cast<std::size_t>(c)] = static_cast<int>(g);
      }
    }
  }
  for (auto &link : vlinks) {
    bool in_range = link.i >= 0 && link.j >= 0 &&
                    static_cast<std::size_t>(link.i) < containers.size() &&
                    static_cast<std::size_t>(link.j) < containers.size();
    link.intra_pod = in_range && pod_of[static_cast<std::size_t>(link.i)] >= 0 &&
                     pod_of[static_cast<std::size_t>(link.i)] == pod_of[static_cast<std::size_t>(link.j)];
  }
}

namespace {

int uniform_int(std::mt19937_64 &rng, std::int64_t lo, std::int64_t hi) {
  return static_cast<int>(std::uniform_int_distribution<std::int64_t>(lo, hi)(rng));
}

void check_config(const WorkloadConfig &cfg) {
  if (cfg.containers_per_request < 1) {
    throw Error(ErrorCode::kInvalidParameter, "containers_per_request must be >= 1");
  }
  if (cfg.n_requests < 0) throw Error(ErrorCode::kInvalidParameter, "n_requests must be >= 0");
  if (!(cfg.pod_fraction >= 0.0 && cfg.pod_fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidParameter, "pod_fraction must lie in [0,1]");
  }
  if (cfg.cpu_max < 1 || cfg.ram_max < 1 || cfg.bw_cap_mbps < 1) {
    throw Error(ErrorCode::kInvalidParameter, "resource maxima must be >= 1");
  }
  if (cfg.horizon < 1 || cfg.max_duration < 1) {
    throw Error(ErrorCode::kInvalidParameter, "horizon and max_duration must be >= 1");
  }
  if (!(cfg.extra_link_probability >= 0.0 && cfg.extra_link_probability <= 1.0)) {
    throw Error(ErrorCode::kInvalidParameter, "extra_link_probability must lie in [0,1]");
  }
}

// Up to ceil(pod_fraction * n) containers are grouped into multi-container
// pods of at least two members; the rest become singletons.
std::vector<std::vector<int>> draw_pods(std::mt19937_64 &rng, int n, double pod_fraction) {
  int max_grouped = std::min(n, static_cast<int>(std::ceil(pod_fraction * n - 1e-12)));
  int grouped = max_grouped >= 2 ? uniform_int(rng, 0, max_grouped) : 0;
  if (grouped == 1) grouped = 0;

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<std::vector<int>> pods;
  if (grouped >= 2) {
    int groups = uniform_int(rng, 1, grouped / 2);
    pods.resize(static_cast<std::size_t>(groups));
    for (int m = 0; m < grouped; ++m) {
      int g = m < 2 * groups ? m / 2 : uniform_int(rng, 0, groups - 1);
      pods[static_cast<std::size_t>(g)].push_back(order[static_cast<std::size_t>(m)]);
    }
  }
  for (int m = grouped; m < n; ++m) pods.push_back({order[static_cast<std::size_t>(m)]});
  for (auto &pod : pods) std::sort(pod.begin(), pod.end());
  std::sort(pods.begin(), pods.end());
  return pods;
}

}  // namespace

std::vector<Request> generate_workload(const WorkloadConfig &cfg, std::uint64_t seed) {
  check_config(cfg);
  std::mt19937_64 rng(seed);
  std::vector<Request> out;
  out.reserve(static_cast<std::size_t>(cfg.n_requests));
  const int n = cfg.containers_per_request;
  for (int id = 0; id < cfg.n_requests; ++id) {
    Request req;
    req.id = id;
    for (int c = 0; c < n; ++c) {
      ContainerSpec spec;
      int cpu = uniform_int(rng, 1, cfg.cpu_max);
      int ram = uniform_int(rng, 1, cfg.ram_max);
      spec.c_max = {static_cast<double>(cpu), static_cast<double>(ram)};
      spec.c_min = {static_cast<double>(uniform_int(rng, 1, cpu)),
                    static_cast<double>(uniform_int(rng, 1, ram))};
      req.containers.push_back(std::move(spec));
    }
    req.pods = draw_pods(rng, n, cfg.pod_fraction);

    // Random spanning tree over a shuffled container order, then optional extras.
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::set<std::pair<int, int>> edges;
    for (int m = 1; m < n; ++m) {
      int a = order[static_cast<std::size_t>(m)];
      int b = order[static_cast<std::size_t>(uniform_int(rng, 0, m - 1))];
      edges.insert({std::min(a, b), std::max(a, b)});
    }
    if (cfg.extra_link_probability > 0.0) {
      std::bernoulli_distribution extra(cfg.extra_link_probability);
      for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
          if (edges.count({a, b}) == 0 && extra(rng)) edges.insert({a, b});
        }
      }
    }
    for (const auto &[a, b] : edges) {
      VirtualLink link;
      link.i = a;
      link.j = b;
      int bw_max = uniform_int(rng, 1, cfg.bw_cap_mbps);
      link.bw_max = bw_max;
      link.bw_min = uniform_int(rng, 1, bw_max);
      req.vlinks.push_back(link);
    }
    req.submit_tick = uniform_int(rng, 0, cfg.horizon - 1);
    req.duration_ticks = uniform_int(rng, 1, cfg.max_duration);
    req.finalize();
    out.push_back(std::move(req));
  }
  return out;
}

std::vector<std::string> validate_request(const Request &req) {
  std::vector<std::string> problems;
  const auto n = req.containers.size();
  for (std::size_t c = 0; c < n; ++c) {
    const auto &spec = req.containers[c];
    if (spec.c_min.size() != spec.c_max.size() || spec.c_min.empty()) {
      problems.push_back("container " + std::to_string(c) + ": min/max vectors differ in size");
      continue;
    }
    for (std::size_t r = 0; r < spec.c_min.size(); ++r) {
      if (!(spec.c_min[r] > 0.0) || !std::isfinite(spec.c_min[r])) {
        problems.push_back("container " + std::to_string(c) + ": c_min[" + std::to_string(r) +
                           "] must be positive");
      } else if (!(spec.c_min[r] <= spec.c_max[r]) || !std::isfinite(spec.c_max[r])) {
        problems.push_back("container " + std::to_string(c) + ": c_min[" + std::to_string(r) +
                           "] exceeds c_max");
      }
    }
  }
  std::vector<int> seen(n, 0);
  for (std::size_t g = 0; g < req.pods.size(); ++g) {
    if (req.pods[g].empty()) problems.push_back("pod " + std::to_string(g) + ": empty");
    for (int c : req.pods[g]) {
      if (c < 0 || static_cast<std::size_t>(c) >= n) {
        problems.push_back("pod " + std::to_string(g) + ": container " + std::to_string(c) +
                           " out of range");
      } else if (seen[static_cast<std::size_t>(c)]++ > 0) {
        problems.push_back("pod " + std::to_string(g) + ": container " + std::to_string(c) +
                           " already belongs to another pod");
      }
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    if (seen[c] == 0) problems.push_back("container " + std::to_string(c) + ": not in any pod");
  }
  for (std::size_t e = 0; e < req.vlinks.size(); ++e) {
    const auto &link = req.vlinks[e];
    auto in_range = [n](int x) { return x >= 0 && static_cast<std::size_t>(x) < n; };
    if (!in_range(link.i) || !in_range(link.j)) {
      problems.push_back("vlink " + std::to_string(e) + ": endpoint out of range");
    } else if (link.i == link.j) {
      problems.push_back("vlink " + std::to_string(e) + ": endpoints must be distinct");
    }
    if (!(link.bw_min > 0.0) || !std::isfinite(link.bw_min)) {
      problems.push_back("vlink " + std::to_string(e) + ": bw_min must be positive");
    } else if (!(link.bw_min <= link.bw_max) || !std::isfinite(link.bw_max)) {
      problems.push_back("vlink " + std::to_string(e) + ": bw_min exceeds bw_max");
    }
  }
  if (req.duration_ticks < 1) problems.push_back("duration_ticks must be >= 1");
  if (req.submit_tick < 0) problems.push_back("submit_tick must be >= 0");
  return problems;
}

std::string dump_workload_jsonl(const std::vector<Request> &requests) {
  std::ostringstream out;
  for (const auto &req : requests) {
    nlohmann::ordered_json row;
    row["v"] = kWorkloadSchemaVersion;
    row["id"] = req.id;
    row["submit_tick"] = req.submit_tick;
    row["duration_ticks"] = req.duration_ticks;
    auto containers = nlohmann::ordered_json::array();
    for (const auto &c : req.containers) {
      containers.push_back({{"c_min", c.c_min}, {"c_max", c.c_max}});
    }
    row["containers"] = std::move(containers);
    row["pods"] = req.pods;
    auto links = nlohmann::ordered_json::array();
    for (const auto &l : req.vlinks) {
      links.push_back({{"i", l.i}, {"j", l.j}, {"bw_min", l.bw_min}, {"bw_max", l.bw_max}});
    }
    row["vlinks"] = std::move(links);
    out << row.dump() << '\n';
  }
  return out.str();
}

std::vector<Request> load_workload_jsonl(const std::string &text) {
  std::vector<Request> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto row = nlohmann::json::parse(line);
      int version = row.at("v").get<int>();
      if (version != kWorkloadSchemaVersion) {
        throw Error(ErrorCode::kInvalidInput, "line " + std::to_string(line_no) +
                                                  ": unsupported workload schema v" +
                                                  std::to_string(version));
      }
      Request req;
      req.id = row.at("id").get<RequestId>();
      req.submit_tick = row.at("submit_tick").get<std::int64_t>();
      req.duration_ticks = row.at("duration_ticks").get<std::int64_t>();
      for (const auto &c : row.at("containers")) {
        req.containers.push_back({c.at("c_min").get<Resources>(), c.at("c_max").get<Resources>()});
      }
      req.pods = row.at("pods").get<std::vector<std::vector<int>>>();
      for (const auto &l : row.at("vlinks")) {
        VirtualLink link;
        link.i = l.at("i").get<int>();
        link.j = l.at("j").get<int>();
        link.bw_min = l.at("bw_min").get<double>();
        link.bw_max = l.at("bw_max").get<double>();
        req.vlinks.push_back(link);
      }
      req.finalize();
      out.push_back(std::move(req));
    } catch (const nlohmann::json::exception &e) {
      throw Error(ErrorCode::kInvalidInput,
                  "workload line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace netsched
