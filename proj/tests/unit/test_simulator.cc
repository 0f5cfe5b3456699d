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

#include <map>

#include "doctest.h"
#include "netsched/error.h"
#include "netsched/simulator.h"

using namespace netsched;

namespace {

SimulationConfig small(const std::string &scheduler) {
  SimulationConfig cfg;
  cfg.workload.n_requests = 60;
  cfg.workload.horizon = 100;
  cfg.workload.max_duration = 80;
  cfg.horizon = 150;
  cfg.scheduler = parse_scheduler_spec(scheduler);
  return cfg;
}

// Enough load on a k=2 fabric that requests queue.
SimulationConfig crowded(const std::string &scheduler) {
  SimulationConfig cfg;
  cfg.topology.k = 2;
  cfg.topology.server_capacity = {8.0, 16.0};
  cfg.topology.link_bandwidth = 200.0;
  cfg.workload.n_requests = 80;
  cfg.workload.containers_per_request = 3;
  cfg.workload.horizon = 60;
  cfg.workload.max_duration = 10;
  cfg.horizon = 120;
  cfg.scheduler = parse_scheduler_spec(scheduler);
  return cfg;
}

void strip_clock(SimulationReport &r) {
  r.totals.runtime_seconds = 0.0;
  r.totals.scheduler_seconds = 0.0;
}

}  // namespace

TEST_CASE("scheduler specs") {
  CHECK(parse_scheduler_spec("bf").label() == "bf");
  CHECK(parse_scheduler_spec("ahp:network").label() == "ahp-network");
  CHECK(parse_scheduler_spec("milp:0.5").label() == "milp-0.5");
  CHECK(parse_scheduler_spec("topsis").schema == "flat");
  CHECK_THROWS_AS(parse_scheduler_spec("random"), Error);
  CHECK_THROWS_AS(parse_scheduler_spec("milp:2"), Error);
  CHECK_THROWS_AS(parse_scheduler_spec("ahp:heavy"), Error);
}

TEST_CASE("config validation") {
  auto cfg = small("bf");
  cfg.horizon = 0;
  CHECK_THROWS_AS(validate_config(cfg), Error);
  cfg = small("bf");
  cfg.topology.k = 5;
  CHECK_THROWS_AS(validate_config(cfg), Error);
}

TEST_CASE("empty workload") {
  auto cfg = small("bf");
  auto dc = build_topology(cfg.topology);
  auto report = run_workload(cfg, dc, {});
  CHECK(report.requests.empty());
  CHECK(report.totals.submitted == 0);
  CHECK(report.totals.events == 0);
  REQUIRE(report.ticks.size() == 150);
  for (const auto &t : report.ticks) {
    CHECK(t.server_fragmentation == 0.0);
    CHECK(t.link_fragmentation == 0.0);
  }
}

TEST_CASE("one request on an empty data center") {
  auto cfg = small("wf");
  auto dc = build_topology(cfg.topology);
  auto w = generate_workload(cfg.workload, 3);
  w.resize(1);
  auto report = run_workload(cfg, dc, w);
  REQUIRE(report.requests.size() == 1);
  CHECK(report.requests[0].accepted());
  CHECK(report.requests[0].delay == 0);
  CHECK(report.requests[0].schedule_tick == w[0].submit_tick);
  CHECK(report.totals.events == 1);
}

TEST_CASE("reports are reproducible") {
  for (const char *s : {"bf", "wf", "ahp:clustering", "topsis:network", "milp:0.5"}) {
    auto cfg = crowded(s);
    auto a = run(cfg);
    auto b = run(cfg);
    strip_clock(a);
    strip_clock(b);
    CHECK(report_json(a) == report_json(b));
    CHECK(requests_csv(a) == requests_csv(b));
    CHECK(ticks_csv(a) == ticks_csv(b));
  }
}

TEST_CASE("tick invariants") {
  for (const char *s : {"bf", "wf", "ahp:flat", "topsis:clustering", "milp:0"}) {
    for (bool hol : {true, false}) {
      auto cfg = crowded(s);
      cfg.head_of_line_blocking = hol;
      cfg.audit_every_tick = true;
      auto workload = generate_workload(cfg.workload, cfg.seed);
      std::map<RequestId, std::pair<std::int64_t, RequestId>> key;
      for (const auto &r : workload) key[r.id] = {r.submit_tick, r.id};
      std::map<std::int64_t, std::vector<RequestId>> queued;
      int checked = 0;
      auto report = run(cfg, [&](const TickView &v) {
        CHECK(v.dc->audit().empty());
        CHECK(v.accepted + v.rejected + v.queue->size() == v.submitted);
        for (std::size_t q = 1; q < v.queue->size(); ++q) {
          CHECK(key[(*v.queue)[q - 1]] < key[(*v.queue)[q]]);
        }
        queued[v.tick] = *v.queue;
        ++checked;
      });
      CHECK(checked == cfg.horizon);
      CHECK(report.totals.accepted + report.totals.rejected == report.totals.submitted);
      CHECK(report.ticks.back().queue_length == report.totals.rejected);
      if (hol) {
        // Nothing older is left waiting behind a request placed that tick.
        for (const auto &rec : report.requests) {
          if (!rec.accepted()) continue;
          for (RequestId other : queued[rec.schedule_tick]) {
            CHECK(key[other] > key[rec.id]);
          }
        }
      }
      for (const auto &t : report.ticks) {
        CHECK(t.server_fragmentation >= 0.0);
        CHECK(t.server_fragmentation <= 1.0);
        CHECK(t.link_fragmentation >= 0.0);
        CHECK(t.link_fragmentation <= 1.0);
      }
      for (const auto &rec : report.requests) {
        CHECK(rec.delay >= 0);
        for (double u : rec.container_utility) CHECK((u > 0.0 && u <= 1.0));
        for (double u : rec.link_utility) CHECK((u > 0.0 && u <= 1.0));
      }
    }
  }
}

TEST_CASE("crowded runs queue and retry") {
  auto report = run(crowded("bf"));
  CHECK(report.totals.max_delay > 0);
  CHECK(report.totals.events > report.totals.accepted);
}

TEST_CASE("fragmentation returns to zero once drained") {
  auto cfg = small("topsis:network");
  cfg.horizon = 200;
  auto report = run(cfg);
  CHECK(report.totals.accepted == report.totals.submitted);
  CHECK(report.ticks.back().running == 0);
  CHECK(report.ticks.back().server_fragmentation == 0.0);
  CHECK(report.ticks.back().link_fragmentation == 0.0);
}

TEST_CASE("compare") {
  auto bf = small("bf");
  auto wf = small("wf");
  auto rows = compare({bf, wf});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].scheduler == "bf");
  CHECK(rows[1].scheduler == "wf");
  CHECK(rows[0].accepted + rows[0].rejected == rows[1].accepted + rows[1].rejected);

  auto one = compare({bf});
  auto direct = comparison_row(run(bf));
  CHECK(one[0].accepted == direct.accepted);
  CHECK(one[0].mean_link_utility == direct.mean_link_utility);
  CHECK(one[0].mean_delay == direct.mean_delay);
  CHECK(one[0].mean_link_fragmentation == direct.mean_link_fragmentation);
  CHECK(one[0].events == direct.events);

  auto other = small("wf");
  other.seed = 99;
  try {
    compare({bf, other});
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kInvalidParameter);
  }
  CHECK_THROWS_AS(compare({}), Error);
}

TEST_CASE("milp utility ordering on a 1 Mbps workload") {
  SimulationConfig base;
  base.workload.bw_cap_mbps = 1;
  base.workload.n_requests = 60;
  std::vector<SimulationConfig> cfgs;
  for (const char *s : {"milp:0", "milp:0.5", "milp:1"}) {
    auto c = base;
    c.scheduler = parse_scheduler_spec(s);
    cfgs.push_back(c);
  }
  auto rows = compare(cfgs);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].mean_container_utility <= rows[1].mean_container_utility);
  CHECK(rows[1].mean_container_utility <= rows[2].mean_container_utility);
  CHECK(rows[2].mean_container_utility == 1.0);
}

TEST_CASE("report formats") {
  auto report = run(small("bf"));
  auto json = report_json(report);
  CHECK(json.find("\"v\": 1") != std::string::npos);
  auto csv = requests_csv(report);
  CHECK(csv.rfind("id,", 0) == 0);
  std::size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == report.requests.size() + 1);
  auto ticks = ticks_csv(report);
  CHECK(ticks.rfind("tick,server_fragmentation,link_fragmentation,queue_length,running\n", 0) == 0);
  auto rows = comparison_csv({comparison_row(report)});
  CHECK(rows.find("bf,") != std::string::npos);
}
