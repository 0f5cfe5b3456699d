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

#include "netsched/simulator.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "netsched/baselines.h"
#include "netsched/error.h"
#include "netsched/multicriteria.h"

namespace netsched {

namespace {

std::string num(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

class FunctionScheduler : public Scheduler {
 public:
  using Fn = std::optional<Placement> (*)(const DataCenter &, const Request &);
  explicit FunctionScheduler(Fn fn) : fn_(fn) {}
  std::optional<Placement> schedule(const DataCenter &dc, const Request &req) override {
    return fn_(dc, req);
  }

 private:
  Fn fn_;
};

class RankingScheduler : public Scheduler {
 public:
  RankingScheduler(RankMethod method, WeightVector weights)
      : method_(method), weights_(std::move(weights)) {}
  std::optional<Placement> schedule(const DataCenter &dc, const Request &req) override {
    return schedule_multicriteria(dc, req, method_, weights_);
  }

 private:
  RankMethod method_;
  WeightVector weights_;
};

class ExactScheduler : public Scheduler {
 public:
  ExactScheduler(double alpha, double max_assignments) : alpha_(alpha) {
    options_.max_assignments = max_assignments;
  }
  std::optional<Placement> schedule(const DataCenter &dc, const Request &req) override {
    return solve_exact(dc, req, alpha_, options_).placement;
  }

 private:
  double alpha_;
  ExactOptions options_;
};

double mean(const std::vector<double> &xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double nearest_rank(const std::vector<std::int64_t> &sorted, double q) {
  if (sorted.empty()) return 0.0;
  auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return static_cast<double>(sorted[rank - 1]);
}

bool same_workload(const SimulationConfig &a, const SimulationConfig &b) {
  const auto &wa = a.workload;
  const auto &wb = b.workload;
  return a.topology.k == b.topology.k && a.topology.server_capacity == b.topology.server_capacity &&
         a.topology.link_bandwidth == b.topology.link_bandwidth && a.seed == b.seed &&
         a.horizon == b.horizon && wa.n_requests == wb.n_requests &&
         wa.containers_per_request == wb.containers_per_request &&
         wa.pod_fraction == wb.pod_fraction && wa.cpu_max == wb.cpu_max &&
         wa.ram_max == wb.ram_max && wa.bw_cap_mbps == wb.bw_cap_mbps &&
         wa.horizon == wb.horizon && wa.max_duration == wb.max_duration &&
         wa.extra_link_probability == wb.extra_link_probability;
}

}  // namespace

std::string SchedulerSpec::label() const {
  if (name == "ahp" || name == "topsis") return name + "-" + schema;
  if (name == "milp") return name + "-" + num(alpha);
  return name;
}

SchedulerSpec parse_scheduler_spec(const std::string &text) {
  SchedulerSpec spec;
  auto colon = text.find(':');
  spec.name = text.substr(0, colon);
  if (colon != std::string::npos) {
    std::string arg = text.substr(colon + 1);
    if (spec.name == "milp") {
      double alpha = 0.0;
      auto res = std::from_chars(arg.data(), arg.data() + arg.size(), alpha);
      if (res.ec != std::errc() || res.ptr != arg.data() + arg.size()) {
        throw Error(ErrorCode::kInvalidParameter, "bad alpha in scheduler '" + text + "'");
      }
      spec.alpha = alpha;
    } else {
      spec.schema = arg;
    }
  }
  make_scheduler(spec);
  return spec;
}

std::unique_ptr<Scheduler> make_scheduler(const SchedulerSpec &spec) {
  if (spec.name == "bf") return std::make_unique<FunctionScheduler>(&best_fit);
  if (spec.name == "wf") return std::make_unique<FunctionScheduler>(&worst_fit);
  if (spec.name == "ahp" || spec.name == "topsis") {
    return std::make_unique<RankingScheduler>(parse_rank_method(spec.name), weight_schema(spec.schema));
  }
  if (spec.name == "milp") {
    if (!(spec.alpha >= 0.0 && spec.alpha <= 1.0)) {
      throw Error(ErrorCode::kInvalidParameter, "alpha must lie in [0,1]");
    }
    return std::make_unique<ExactScheduler>(spec.alpha, spec.max_assignments);
  }
  throw Error(ErrorCode::kInvalidParameter, "unknown scheduler '" + spec.name + "'");
}

void validate_config(const SimulationConfig &cfg) {
  if (cfg.horizon < 1) throw Error(ErrorCode::kInvalidParameter, "horizon must be >= 1");
  if (cfg.topology.k < 2 || cfg.topology.k % 2 != 0) {
    throw Error(ErrorCode::kInvalidParameter, "fat-tree k must be even and >= 2");
  }
  if (cfg.topology.server_capacity.empty()) {
    throw Error(ErrorCode::kInvalidParameter, "server capacity is empty");
  }
  make_scheduler(cfg.scheduler);
}

DataCenter build_topology(const TopologyConfig &cfg) {
  return build_fat_tree(cfg.k, cfg.server_capacity, cfg.link_bandwidth);
}

SimulationReport run(const SimulationConfig &cfg, const TickObserver &observer) {
  validate_config(cfg);
  DataCenter dc = build_topology(cfg.topology);
  auto workload = generate_workload(cfg.workload, cfg.seed);
  return run_workload(cfg, dc, workload, observer);
}

SimulationReport run_workload(const SimulationConfig &cfg, const DataCenter &initial,
                              const std::vector<Request> &workload, const TickObserver &observer) {
  validate_config(cfg);
  auto started = std::chrono::steady_clock::now();
  DataCenter dc = initial;
  auto scheduler = make_scheduler(cfg.scheduler);

  SimulationReport report;
  report.scheduler = cfg.scheduler.label();
  report.requests.resize(workload.size());
  std::vector<std::size_t> arrival(workload.size());
  std::iota(arrival.begin(), arrival.end(), 0);
  std::stable_sort(arrival.begin(), arrival.end(), [&](std::size_t a, std::size_t b) {
    if (workload[a].submit_tick != workload[b].submit_tick) {
      return workload[a].submit_tick < workload[b].submit_tick;
    }
    return workload[a].id < workload[b].id;
  });
  for (std::size_t i = 0; i < workload.size(); ++i) {
    auto problems = validate_request(workload[i]);
    if (!problems.empty()) {
      throw Error(ErrorCode::kInvalidInput,
                  "request " + std::to_string(workload[i].id) + ": " + problems.front());
    }
    report.requests[i].id = workload[i].id;
    report.requests[i].submit_tick = workload[i].submit_tick;
  }

  std::map<std::int64_t, std::vector<std::size_t>> departures;
  std::deque<std::size_t> queue;
  std::size_t next_arrival = 0;
  std::size_t accepted = 0;
  std::size_t running = 0;
  std::uint64_t events = 0;
  double scheduler_seconds = 0.0;
  std::vector<RequestId> queue_ids;

  auto attempt = [&](std::size_t idx, std::int64_t tick) {
    const Request &req = workload[idx];
    auto t0 = std::chrono::steady_clock::now();
    std::optional<Placement> placement;
    try {
      placement = scheduler->schedule(dc, req);
    } catch (const Error &e) {
      throw Error(e.code(), "tick " + std::to_string(tick) + ", request " + std::to_string(req.id) +
                                ": " + e.what());
    }
    scheduler_seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ++events;
    auto &rec = report.requests[idx];
    ++rec.attempts;
    if (!placement) return false;
    placement->request_id = req.id;
    try {
      dc.apply(*placement);
    } catch (const Error &e) {
      throw Error(e.code(), "tick " + std::to_string(tick) + ", request " + std::to_string(req.id) +
                                ": scheduler returned an infeasible placement: " + e.what());
    }
    rec.schedule_tick = tick;
    rec.delay = tick - req.submit_tick;
    for (std::size_t i = 0; i < req.containers.size(); ++i) {
      rec.container_utility.push_back(utility_container(placement->allocated_caps[i], req.containers[i]));
    }
    for (std::size_t e = 0; e < req.vlinks.size(); ++e) {
      rec.link_utility.push_back(utility_link(placement->allocated_bw[e], req.vlinks[e]));
    }
    rec.server_fragmentation = server_fragmentation(dc);
    rec.link_fragmentation = link_fragmentation(dc);
    departures[tick + req.duration_ticks].push_back(idx);
    ++accepted;
    ++running;
    return true;
  };

  for (std::int64_t tick = 0; tick < cfg.horizon; ++tick) {
    auto due = departures.find(tick);
    if (due != departures.end()) {
      auto leaving = due->second;
      std::sort(leaving.begin(), leaving.end(),
                [&](std::size_t a, std::size_t b) { return workload[a].id < workload[b].id; });
      for (std::size_t idx : leaving) {
        dc.release(workload[idx].id);
        --running;
      }
      departures.erase(due);
    }
    while (next_arrival < arrival.size() && workload[arrival[next_arrival]].submit_tick <= tick) {
      queue.push_back(arrival[next_arrival++]);
    }
    if (cfg.head_of_line_blocking) {
      while (!queue.empty() && attempt(queue.front(), tick)) queue.pop_front();
    } else {
      std::deque<std::size_t> waiting;
      for (std::size_t idx : queue) {
        if (!attempt(idx, tick)) waiting.push_back(idx);
      }
      queue.swap(waiting);
    }

    if (cfg.audit_every_tick) {
      auto drift = dc.audit();
      if (!drift.empty()) {
        throw Error(ErrorCode::kConstraintViolation, "tick " + std::to_string(tick) + ": " + drift);
      }
    }
    TickRecord tr;
    tr.tick = tick;
    tr.server_fragmentation = server_fragmentation(dc);
    tr.link_fragmentation = link_fragmentation(dc);
    tr.queue_length = queue.size();
    tr.running = running;
    report.ticks.push_back(tr);
    if (observer) {
      queue_ids.clear();
      for (std::size_t idx : queue) queue_ids.push_back(workload[idx].id);
      TickView view;
      view.tick = tick;
      view.dc = &dc;
      view.queue = &queue_ids;
      view.submitted = next_arrival;
      view.accepted = accepted;
      view.rejected = 0;
      observer(view);
    }
  }

  auto &t = report.totals;
  t.submitted = workload.size();
  t.accepted = accepted;
  t.rejected = workload.size() - accepted;
  t.events = events;
  t.horizon_ticks = cfg.horizon;
  std::vector<std::int64_t> delays;
  std::vector<double> cu;
  std::vector<double> lu;
  for (const auto &rec : report.requests) {
    if (!rec.accepted()) continue;
    delays.push_back(rec.delay);
    cu.insert(cu.end(), rec.container_utility.begin(), rec.container_utility.end());
    lu.insert(lu.end(), rec.link_utility.begin(), rec.link_utility.end());
  }
  std::sort(delays.begin(), delays.end());
  if (!delays.empty()) {
    double sum = 0.0;
    for (auto d : delays) sum += static_cast<double>(d);
    t.mean_delay = sum / static_cast<double>(delays.size());
    t.max_delay = delays.back();
  }
  t.p50_delay = nearest_rank(delays, 0.50);
  t.p95_delay = nearest_rank(delays, 0.95);
  t.mean_container_utility = mean(cu);
  t.mean_link_utility = mean(lu);
  std::vector<double> sf;
  std::vector<double> lf;
  for (const auto &tr : report.ticks) {
    sf.push_back(tr.server_fragmentation);
    lf.push_back(tr.link_fragmentation);
  }
  t.mean_server_fragmentation = mean(sf);
  t.mean_link_fragmentation = mean(lf);
  t.scheduler_seconds = scheduler_seconds;
  t.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

ComparisonRow comparison_row(const SimulationReport &report) {
  ComparisonRow row;
  const auto &t = report.totals;
  row.scheduler = report.scheduler;
  row.accepted = t.accepted;
  row.rejected = t.rejected;
  row.mean_link_utility = t.mean_link_utility;
  row.mean_container_utility = t.mean_container_utility;
  row.mean_delay = t.mean_delay;
  row.mean_server_fragmentation = t.mean_server_fragmentation;
  row.mean_link_fragmentation = t.mean_link_fragmentation;
  row.events = t.events;
  row.runtime_seconds = t.runtime_seconds;
  return row;
}

std::vector<ComparisonRow> compare(const std::vector<SimulationConfig> &cfgs) {
  if (cfgs.empty()) throw Error(ErrorCode::kInvalidParameter, "nothing to compare");
  for (const auto &cfg : cfgs) {
    validate_config(cfg);
    if (!same_workload(cfg, cfgs.front())) {
      throw Error(ErrorCode::kInvalidParameter,
                  "scheduler " + cfg.scheduler.label() + " uses a different topology or workload");
    }
  }
  DataCenter dc = build_topology(cfgs.front().topology);
  auto workload = generate_workload(cfgs.front().workload, cfgs.front().seed);
  std::vector<ComparisonRow> rows;
  for (const auto &cfg : cfgs) rows.push_back(comparison_row(run_workload(cfg, dc, workload)));
  return rows;
}

std::string report_json(const SimulationReport &report) {
  nlohmann::ordered_json j;
  j["v"] = kReportSchemaVersion;
  j["scheduler"] = report.scheduler;
  const auto &t = report.totals;
  j["totals"] = {{"submitted", t.submitted},
                 {"accepted", t.accepted},
                 {"rejected", t.rejected},
                 {"mean_delay", t.mean_delay},
                 {"p50_delay", t.p50_delay},
                 {"p95_delay", t.p95_delay},
                 {"max_delay", t.max_delay},
                 {"mean_container_utility", t.mean_container_utility},
                 {"mean_link_utility", t.mean_link_utility},
                 {"mean_server_fragmentation", t.mean_server_fragmentation},
                 {"mean_link_fragmentation", t.mean_link_fragmentation},
                 {"events", t.events},
                 {"horizon_ticks", t.horizon_ticks},
                 {"scheduler_seconds", t.scheduler_seconds},
                 {"runtime_seconds", t.runtime_seconds}};
  auto reqs = nlohmann::ordered_json::array();
  for (const auto &r : report.requests) {
    nlohmann::ordered_json row;
    row["id"] = r.id;
    row["submit_tick"] = r.submit_tick;
    row["schedule_tick"] = r.accepted() ? nlohmann::ordered_json(r.schedule_tick) : nlohmann::ordered_json();
    row["delay"] = r.delay;
    row["attempts"] = r.attempts;
    row["container_utility"] = r.container_utility;
    row["link_utility"] = r.link_utility;
    row["server_fragmentation"] = r.server_fragmentation;
    row["link_fragmentation"] = r.link_fragmentation;
    reqs.push_back(std::move(row));
  }
  j["requests"] = std::move(reqs);
  auto ticks = nlohmann::ordered_json::array();
  for (const auto &tr : report.ticks) {
    ticks.push_back({{"tick", tr.tick},
                     {"server_fragmentation", tr.server_fragmentation},
                     {"link_fragmentation", tr.link_fragmentation},
                     {"queue_length", tr.queue_length},
                     {"running", tr.running}});
  }
  j["ticks"] = std::move(ticks);
  return j.dump(1);
}

std::string requests_csv(const SimulationReport &report) {
  std::ostringstream out;
  out << "id,submit_tick,schedule_tick,delay,attempts,mean_container_utility,mean_link_utility,"
         "server_fragmentation,link_fragmentation\n";
  for (const auto &r : report.requests) {
    out << r.id << "," << r.submit_tick << ",";
    if (r.accepted()) out << r.schedule_tick;
    out << "," << r.delay << "," << r.attempts << ",";
    if (r.accepted()) {
      out << num(mean(r.container_utility)) << ",";
      if (!r.link_utility.empty()) out << num(mean(r.link_utility));
      out << "," << num(r.server_fragmentation) << "," << num(r.link_fragmentation);
    } else {
      out << ",,,";
    }
    out << "\n";
  }
  return out.str();
}

std::string ticks_csv(const SimulationReport &report) {
  std::ostringstream out;
  out << "tick,server_fragmentation,link_fragmentation,queue_length,running\n";
  for (const auto &t : report.ticks) {
    out << t.tick << "," << num(t.server_fragmentation) << "," << num(t.link_fragmentation) << ","
        << t.queue_length << "," << t.running << "\n";
  }
  return out.str();
}

std::string comparison_csv(const std::vector<ComparisonRow> &rows) {
  std::ostringstream out;
  out << "scheduler,accepted,rejected,mean_link_utility,mean_container_utility,mean_delay,"
         "mean_server_fragmentation,mean_link_fragmentation,events,runtime_seconds\n";
  for (const auto &r : rows) {
    out << r.scheduler << "," << r.accepted << "," << r.rejected << "," << num(r.mean_link_utility)
        << "," << num(r.mean_container_utility) << "," << num(r.mean_delay) << ","
        << num(r.mean_server_fragmentation) << "," << num(r.mean_link_fragmentation) << ","
        << r.events << "," << num(r.runtime_seconds) << "\n";
  }
  return out.str();
}

}  // namespace netsched
