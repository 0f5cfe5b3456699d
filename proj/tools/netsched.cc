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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "netsched/error.h"
#include "netsched/exact.h"
#include "netsched/experiment.h"
#include "netsched/simulator.h"

namespace fs = std::filesystem;
using namespace netsched;

namespace {

struct Options {
  std::string config_path;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::string scheduler;
  std::optional<double> alpha;
  std::string schema;
  std::string out;
  std::optional<int> request;
  std::vector<std::string> schedulers;
};

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ExperimentConfig load_config(const Options &o) {
  ExperimentConfig cfg;
  if (!o.config_path.empty()) {
    cfg = parse_experiment_config(read_file(o.config_path));
  } else if (!o.preset.empty()) {
    cfg = preset_config(o.preset);
  } else {
    throw Error(ErrorCode::kInvalidParameter, "either --config or --preset is required");
  }
  auto &spec = cfg.sim.scheduler;
  if (o.seed) cfg.sim.seed = *o.seed;
  if (!o.scheduler.empty()) spec = parse_scheduler_spec(o.scheduler);
  if (o.alpha) spec.alpha = *o.alpha;
  if (!o.schema.empty()) spec.schema = o.schema;
  if (!o.out.empty()) cfg.out_dir = o.out;
  if (o.request) cfg.request_index = *o.request;
  if (!o.schedulers.empty()) {
    cfg.schedulers.clear();
    for (const auto &s : o.schedulers) cfg.schedulers.push_back(parse_scheduler_spec(s));
  }
  validate_config(cfg.sim);
  return cfg;
}

// Files are only written once every output is ready.
void write_outputs(const std::string &dir, const std::vector<std::pair<std::string, std::string>> &files) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create output directory '" + dir + "': " + ec.message());
  for (const auto &[name, content] : files) {
    fs::path path = fs::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  }
}

void print_totals(const SimulationReport &r) {
  const auto &t = r.totals;
  std::printf("scheduler        %s\n", r.scheduler.c_str());
  std::printf("submitted        %zu\n", t.submitted);
  std::printf("accepted         %zu\n", t.accepted);
  std::printf("rejected         %zu\n", t.rejected);
  std::printf("mean delay       %.3f ticks (p95 %.0f, max %lld)\n", t.mean_delay, t.p95_delay,
              static_cast<long long>(t.max_delay));
  std::printf("mean U(i)        %.4f\n", t.mean_container_utility);
  std::printf("mean U(ij)       %.4f\n", t.mean_link_utility);
  std::printf("mean F(N^s)      %.4f\n", t.mean_server_fragmentation);
  std::printf("mean F(E^s)      %.4f\n", t.mean_link_fragmentation);
  std::printf("events           %llu\n", static_cast<unsigned long long>(t.events));
  std::printf("runtime          %.3f s\n", t.runtime_seconds);
}

int cmd_run(const Options &o) {
  auto cfg = load_config(o);
  auto report = run(cfg.sim);
  write_outputs(cfg.out_dir, {{"config.json", experiment_config_json(cfg)},
                              {"report.json", report_json(report)},
                              {"requests.csv", requests_csv(report)},
                              {"ticks.csv", ticks_csv(report)}});
  print_totals(report);
  return 0;
}

int cmd_compare(const Options &o) {
  auto cfg = load_config(o);
  if (cfg.schedulers.empty()) {
    std::cerr << "compare: the scheduler list is empty\n";
    return 2;
  }
  std::vector<SimulationConfig> cfgs;
  for (const auto &s : cfg.schedulers) {
    SimulationConfig sim = cfg.sim;
    sim.scheduler = s;
    cfgs.push_back(sim);
  }
  auto rows = compare(cfgs);
  auto csv = comparison_csv(rows);
  write_outputs(cfg.out_dir, {{"config.json", experiment_config_json(cfg)}, {"compare.csv", csv}});
  std::printf("%-20s %9s %9s %9s %9s %10s %9s %9s %9s\n", "scheduler", "accepted", "U(ij)", "U(i)",
              "delay", "F(N^s)", "F(E^s)", "events", "runtime");
  for (const auto &r : rows) {
    std::printf("%-20s %9zu %9.4f %9.4f %9.3f %10.4f %9.4f %9llu %9.3f\n", r.scheduler.c_str(),
                r.accepted, r.mean_link_utility, r.mean_container_utility, r.mean_delay,
                r.mean_server_fragmentation, r.mean_link_fragmentation,
                static_cast<unsigned long long>(r.events), r.runtime_seconds);
  }
  return 0;
}

int cmd_export_lp(const Options &o) {
  auto cfg = load_config(o);
  auto workload = generate_workload(cfg.sim.workload, cfg.sim.seed);
  if (cfg.request_index < 0 || static_cast<std::size_t>(cfg.request_index) >= workload.size()) {
    throw Error(ErrorCode::kInvalidParameter, "request index " + std::to_string(cfg.request_index) +
                                                  " out of range (workload has " +
                                                  std::to_string(workload.size()) + " requests)");
  }
  DataCenter dc = build_topology(cfg.sim.topology);
  const auto &req = workload[static_cast<std::size_t>(cfg.request_index)];
  auto model = build_milp_model(dc, req, cfg.sim.scheduler.alpha);
  std::string name = "request-" + std::to_string(cfg.request_index) + ".lp";
  write_outputs(cfg.out_dir, {{"config.json", experiment_config_json(cfg)}, {name, export_lp(model)}});
  std::printf("wrote %s\n", (fs::path(cfg.out_dir) / name).string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"netsched: network-aware container scheduling experiments"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App *cmd) {
    cmd->add_option("--config", o.config_path, "JSON experiment config");
    cmd->add_option("--preset", o.preset, "built-in preset (paper-small, paper-small-1mbps, paper-large)");
    cmd->add_option("--seed", o.seed, "workload seed");
    cmd->add_option("--scheduler", o.scheduler, "bf, wf, ahp, topsis, milp (or name:arg)");
    cmd->add_option("--alpha", o.alpha, "MILP trade-off in [0,1]");
    cmd->add_option("--schema", o.schema, "weighting schema: flat, clustering, network");
    cmd->add_option("--out", o.out, "output directory");
  };
  auto *run_cmd = app.add_subcommand("run", "simulate one scheduler");
  add_common(run_cmd);
  auto *compare_cmd = app.add_subcommand("compare", "simulate several schedulers on one workload");
  add_common(compare_cmd);
  compare_cmd->add_option("--schedulers", o.schedulers, "scheduler list, e.g. bf wf ahp:network")
      ->delimiter(',');
  auto *export_cmd = app.add_subcommand("export-lp", "write the MILP of one request as an LP file");
  add_common(export_cmd);
  export_cmd->add_option("--request", o.request, "request index in the generated workload");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e);
  }
  try {
    if (*run_cmd) return cmd_run(o);
    if (*compare_cmd) return cmd_compare(o);
    if (*export_cmd) return cmd_export_lp(o);
  } catch (const Error &e) {
    std::cerr << "netsched: " << e.what() << "\n";
    return e.code() == ErrorCode::kInvalidParameter ? 2 : 1;
  } catch (const std::exception &e) {
    std::cerr << "netsched: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
