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

#include "doctest.h"
#include "netsched/error.h"
#include "netsched/experiment.h"

using namespace netsched;

TEST_CASE("presets") {
  auto small = preset_config("paper-small");
  CHECK(small.sim.topology.k == 4);
  CHECK(small.sim.workload.n_requests == 200);
  CHECK(small.sim.workload.containers_per_request == 5);
  CHECK(small.sim.workload.bw_cap_mbps == 50);
  CHECK(small.sim.topology.server_capacity == Resources{24.0, 256.0});
  CHECK(small.sim.topology.link_bandwidth == 1000.0);
  CHECK(small.schedulers.size() == 5);

  CHECK(preset_config("paper-small-1mbps").sim.workload.bw_cap_mbps == 1);

  auto large = preset_config("paper-large");
  CHECK(large.sim.topology.k == 20);
  CHECK(large.sim.workload.n_requests == 6000);
  CHECK(large.sim.workload.containers_per_request == 4);
  REQUIRE(large.schedulers.size() == 8);
  CHECK(large.schedulers[0].label() == "bf");
  CHECK(large.schedulers[7].label() == "topsis-network");

  CHECK(preset_names().size() == 3);
  CHECK_THROWS_AS(preset_config("paper-huge"), Error);
}

TEST_CASE("config documents") {
  auto cfg = parse_experiment_config(R"({
    "preset": "paper-small",
    "seed": 7,
    "scheduler": "ahp:network",
    "schedulers": ["bf", {"name": "milp", "alpha": 0.25}],
    "workload": {"n_requests": 10},
    "out": "elsewhere"
  })");
  CHECK(cfg.sim.seed == 7);
  CHECK(cfg.sim.topology.k == 4);
  CHECK(cfg.sim.workload.n_requests == 10);
  CHECK(cfg.sim.scheduler.label() == "ahp-network");
  REQUIRE(cfg.schedulers.size() == 2);
  CHECK(cfg.schedulers[1].alpha == 0.25);
  CHECK(cfg.out_dir == "elsewhere");

  auto echoed = experiment_config_json(cfg);
  auto again = parse_experiment_config(echoed);
  CHECK(experiment_config_json(again) == echoed);
}

TEST_CASE("bad config documents") {
  auto code = [](const std::string &text) {
    try {
      parse_experiment_config(text);
    } catch (const Error &e) {
      return e.code();
    }
    return ErrorCode::kIo;
  };
  CHECK(code("{") == ErrorCode::kInvalidInput);
  CHECK(code("[]") == ErrorCode::kInvalidInput);
  CHECK(code(R"({"sead": 1})") == ErrorCode::kInvalidInput);
  CHECK(code(R"({"topology": {"k": 4, "kk": 1}})") == ErrorCode::kInvalidInput);
  CHECK(code(R"({"seed": "one"})") == ErrorCode::kInvalidInput);
  CHECK(code(R"({"preset": "nope"})") == ErrorCode::kInvalidParameter);
  CHECK(code(R"({"horizon": 0})") == ErrorCode::kInvalidParameter);
  CHECK(code(R"({"scheduler": "milp:3"})") == ErrorCode::kInvalidParameter);
}
