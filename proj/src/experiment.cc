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

#include "netsched/experiment.h"

#include "json.hpp"
#include "netsched/error.h"

namespace netsched {

namespace {

using nlohmann::json;

std::vector<SchedulerSpec> specs(std::initializer_list<const char *> names) {
  std::vector<SchedulerSpec> out;
  for (const char *n : names) out.push_back(parse_scheduler_spec(n));
  return out;
}

void reject_unknown(const json &obj, std::initializer_list<const char *> allowed,
                    const std::string &where) {
  for (const auto &item : obj.items()) {
    bool known = false;
    for (const char *a : allowed) known = known || item.key() == a;
    if (!known) throw Error(ErrorCode::kInvalidInput, "unknown key '" + item.key() + "' in " + where);
  }
}

SchedulerSpec scheduler_from_json(const json &j) {
  if (j.is_string()) return parse_scheduler_spec(j.get<std::string>());
  if (!j.is_object()) throw Error(ErrorCode::kInvalidInput, "scheduler must be a string or object");
  reject_unknown(j, {"name", "schema", "alpha", "max_assignments"}, "scheduler");
  SchedulerSpec spec;
  spec.name = j.at("name").get<std::string>();
  spec.schema = j.value("schema", spec.schema);
  spec.alpha = j.value("alpha", spec.alpha);
  spec.max_assignments = j.value("max_assignments", spec.max_assignments);
  make_scheduler(spec);
  return spec;
}

nlohmann::ordered_json scheduler_to_json(const SchedulerSpec &s) {
  nlohmann::ordered_json j;
  j["name"] = s.name;
  if (s.name == "ahp" || s.name == "topsis") j["schema"] = s.schema;
  if (s.name == "milp") {
    j["alpha"] = s.alpha;
    j["max_assignments"] = s.max_assignments;
  }
  return j;
}

}  // namespace

std::vector<std::string> preset_names() { return {"paper-small", "paper-small-1mbps", "paper-large"}; }

ExperimentConfig preset_config(std::string_view name) {
  ExperimentConfig cfg;
  cfg.preset = std::string(name);
  auto &sim = cfg.sim;
  sim.topology.server_capacity = {24.0, 256.0};
  sim.topology.link_bandwidth = 1000.0;
  sim.workload.pod_fraction = 0.5;
  sim.workload.cpu_max = 2;
  sim.workload.ram_max = 4;
  sim.workload.horizon = 500;
  sim.horizon = 500;
  if (name == "paper-small" || name == "paper-small-1mbps") {
    sim.topology.k = 4;
    sim.workload.n_requests = 200;
    sim.workload.containers_per_request = 5;
    sim.workload.bw_cap_mbps = name == "paper-small" ? 50 : 1;
    sim.workload.max_duration = 200;
    sim.scheduler = parse_scheduler_spec("bf");
    cfg.schedulers = specs({"bf", "wf", "milp:0", "milp:0.5", "milp:1"});
  } else if (name == "paper-large") {
    sim.topology.k = 20;
    sim.workload.n_requests = 6000;
    sim.workload.containers_per_request = 4;
    sim.workload.bw_cap_mbps = 50;
    sim.workload.max_duration = 250;
    sim.scheduler = parse_scheduler_spec("topsis:network");
    cfg.schedulers = specs({"bf", "wf", "ahp:flat", "ahp:clustering", "ahp:network", "topsis:flat",
                            "topsis:clustering", "topsis:network"});
  } else {
    throw Error(ErrorCode::kInvalidParameter, "unknown preset '" + std::string(name) + "'");
  }
  return cfg;
}

ExperimentConfig parse_experiment_config(const std::string &json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kInvalidInput, std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::kInvalidInput, "config must be a JSON object");
  reject_unknown(doc,
                 {"preset", "seed", "horizon", "head_of_line_blocking", "topology", "workload",
                  "scheduler", "schedulers", "request_index", "out"},
                 "config");
  try {
    ExperimentConfig cfg;
    if (doc.contains("preset")) cfg = preset_config(doc["preset"].get<std::string>());
    auto &sim = cfg.sim;
    sim.seed = doc.value("seed", sim.seed);
    sim.horizon = doc.value("horizon", sim.horizon);
    sim.head_of_line_blocking = doc.value("head_of_line_blocking", sim.head_of_line_blocking);
    if (doc.contains("topology")) {
      const auto &t = doc["topology"];
      reject_unknown(t, {"k", "server_capacity", "link_bandwidth"}, "topology");
      sim.topology.k = t.value("k", sim.topology.k);
      sim.topology.server_capacity = t.value("server_capacity", sim.topology.server_capacity);
      sim.topology.link_bandwidth = t.value("link_bandwidth", sim.topology.link_bandwidth);
    }
    if (doc.contains("workload")) {
      const auto &w = doc["workload"];
      reject_unknown(w,
                     {"n_requests", "containers_per_request", "pod_fraction", "cpu_max", "ram_max",
                      "bw_cap_mbps", "horizon", "max_duration", "extra_link_probability"},
                     "workload");
      auto &wc = sim.workload;
      wc.n_requests = w.value("n_requests", wc.n_requests);
      wc.containers_per_request = w.value("containers_per_request", wc.containers_per_request);
      wc.pod_fraction = w.value("pod_fraction", wc.pod_fraction);
      wc.cpu_max = w.value("cpu_max", wc.cpu_max);
      wc.ram_max = w.value("ram_max", wc.ram_max);
      wc.bw_cap_mbps = w.value("bw_cap_mbps", wc.bw_cap_mbps);
      wc.horizon = w.value("horizon", wc.horizon);
      wc.max_duration = w.value("max_duration", wc.max_duration);
      wc.extra_link_probability = w.value("extra_link_probability", wc.extra_link_probability);
    }
    if (doc.contains("scheduler")) sim.scheduler = scheduler_from_json(doc["scheduler"]);
    if (doc.contains("schedulers")) {
      cfg.schedulers.clear();
      for (const auto &s : doc["schedulers"]) cfg.schedulers.push_back(scheduler_from_json(s));
    }
    cfg.request_index = doc.value("request_index", cfg.request_index);
    cfg.out_dir = doc.value("out", cfg.out_dir);
    validate_config(sim);
    return cfg;
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kInvalidInput, std::string("config: ") + e.what());
  }
}

std::string experiment_config_json(const ExperimentConfig &cfg) {
  nlohmann::ordered_json j;
  if (!cfg.preset.empty()) j["preset"] = cfg.preset;
  const auto &sim = cfg.sim;
  j["seed"] = sim.seed;
  j["horizon"] = sim.horizon;
  j["head_of_line_blocking"] = sim.head_of_line_blocking;
  j["topology"] = {{"k", sim.topology.k},
                   {"server_capacity", sim.topology.server_capacity},
                   {"link_bandwidth", sim.topology.link_bandwidth}};
  const auto &w = sim.workload;
  j["workload"] = {{"n_requests", w.n_requests},
                   {"containers_per_request", w.containers_per_request},
                   {"pod_fraction", w.pod_fraction},
                   {"cpu_max", w.cpu_max},
                   {"ram_max", w.ram_max},
                   {"bw_cap_mbps", w.bw_cap_mbps},
                   {"horizon", w.horizon},
                   {"max_duration", w.max_duration},
                   {"extra_link_probability", w.extra_link_probability}};
  j["scheduler"] = scheduler_to_json(sim.scheduler);
  auto list = nlohmann::ordered_json::array();
  for (const auto &s : cfg.schedulers) list.push_back(scheduler_to_json(s));
  j["schedulers"] = std::move(list);
  j["request_index"] = cfg.request_index;
  j["out"] = cfg.out_dir;
  return j.dump(2) + "\n";
}

}  // namespace netsched
