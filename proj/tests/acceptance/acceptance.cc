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

// Acceptance checks. One PASS/FAIL line per criterion; exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "netsched/baselines.h"
#include "netsched/exact.h"
#include "netsched/experiment.h"
#include "netsched/multicriteria.h"
#include "netsched/pathing.h"
#include "netsched/simulator.h"
#include "oracles.h"

using namespace netsched;

namespace {

// Pinned tolerances.
constexpr double kObjectiveTolerance = 1e-9;
constexpr double kExactRuntimeBudget = 10.0;
constexpr double kTopsisRuntimeBudget = 60.0;
constexpr double kSlackTolerance = 1e-9;
constexpr double kReciprocityTolerance = 1e-12;
constexpr double kLinkUtilityTolerance = 1e-12;

int failures = 0;

void report(int n, bool ok, const std::string &detail) {
  std::printf("criterion %d: %s  %s\n", n, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char *format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char *format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

struct Instance {
  DataCenter dc;
  Request req;
};

// <= 3 pods, <= 4 servers, <= 4 virtual links.
Instance small_instance(std::mt19937_64 &rng) {
  int servers = 2 + static_cast<int>(rng() % 3);
  auto dc = oracle::small_dc(rng, servers);
  oracle::preload(rng, dc, static_cast<int>(rng() % 3), 100);
  int containers = 1 + static_cast<int>(rng() % 5);
  auto req = oracle::random_request(rng, containers, 3, 4, 3, 6, 12, 1);
  return {std::move(dc), std::move(req)};
}

void criterion_1() {
  std::mt19937_64 rng(1001);
  const double alphas[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  int instances = 0, feasible = 0, mismatches = 0;
  double worst = 0.0, solve_seconds = 0.0;
  for (int k = 0; k < 300; ++k) {
    auto inst = small_instance(rng);
    double alpha = alphas[k % 5];
    auto want = oracle::brute_force_exact(inst.dc, inst.req, alpha);
    auto t0 = std::chrono::steady_clock::now();
    auto got = solve_exact(inst.dc, inst.req, alpha);
    solve_seconds += seconds_since(t0);
    ++instances;
    if (got.placement.has_value() != want.best.has_value()) {
      ++mismatches;
      continue;
    }
    if (!got.placement) continue;
    ++feasible;
    double diff = std::abs(got.objective.total - want.best->objective.total);
    worst = std::max(worst, diff);
    if (got.pod_to_server != *want.assignment || diff > kObjectiveTolerance) ++mismatches;
  }
  bool ok = instances >= 200 && mismatches == 0 && solve_seconds < kExactRuntimeBudget;
  report(1, ok,
         fmt("%d instances (%d feasible), %d mismatches, max |dobj| %.3g, solve time %.3f s",
             instances, feasible, mismatches, worst, solve_seconds));
}

void criterion_2() {
  std::mt19937_64 rng(2002);
  int instances = 0, ample = 0, utility_fail = 0, consolidation_fail = 0;
  while (instances < 50) {
    auto inst = small_instance(rng);
    auto oracle_a1 = oracle::brute_force_exact(inst.dc, inst.req, 1.0);
    if (!oracle_a1.best) continue;
    ++instances;
    auto a1 = solve_exact(inst.dc, inst.req, 1.0);
    if (oracle_a1.ample) {
      ++ample;
      bool all_max = a1.placement.has_value();
      if (all_max) {
        const auto &p = *a1.placement;
        for (std::size_t i = 0; i < inst.req.containers.size(); ++i) {
          all_max = all_max && utility_container(p.allocated_caps[i], inst.req.containers[i]) == 1.0;
        }
        for (std::size_t e = 0; e < inst.req.vlinks.size(); ++e) {
          all_max = all_max && utility_link(p.allocated_bw[e], inst.req.vlinks[e]) == 1.0;
        }
      }
      if (!all_max) ++utility_fail;
    }
    auto a0 = solve_exact(inst.dc, inst.req, 0.0);
    if (!a0.placement || a0.objective.active_servers != oracle_a1.min_active_servers) {
      ++consolidation_fail;
    }
  }
  report(2, utility_fail == 0 && consolidation_fail == 0,
         fmt("%d instances (%d capacity-ample): %d alpha=1 utility misses, %d alpha=0 "
             "server-count misses",
             instances, ample, utility_fail, consolidation_fail));
}

void criterion_3() {
  auto cfg = preset_config("paper-small");
  DataCenter dc = build_topology(cfg.sim.topology);
  auto workload = generate_workload(cfg.sim.workload, cfg.sim.seed);
  auto run_one = [&](const std::string &spec) {
    SimulationConfig sim = cfg.sim;
    sim.scheduler = parse_scheduler_spec(spec);
    return run_workload(sim, dc, workload);
  };
  auto m0 = run_one("milp:0");
  auto m5 = run_one("milp:0.5");
  auto m1 = run_one("milp:1");
  auto wf = run_one("wf");
  auto bf = run_one("bf");

  // Mean bw_min / bw_max over the links BF accepted, computed from the workload.
  double sum = 0.0;
  std::size_t links = 0;
  for (std::size_t k = 0; k < workload.size(); ++k) {
    if (!bf.requests[k].accepted()) continue;
    for (const auto &l : workload[k].vlinks) {
      sum += l.bw_min / l.bw_max;
      ++links;
    }
  }
  double bf_expected = links ? sum / static_cast<double>(links) : 0.0;

  double u0 = m0.totals.mean_link_utility;
  double u5 = m5.totals.mean_link_utility;
  double u1 = m1.totals.mean_link_utility;
  bool ordering = u0 < u5 && u5 < u1;
  bool wf_full = wf.totals.mean_link_utility == 1.0;
  bool bf_min = std::abs(bf.totals.mean_link_utility - bf_expected) <= kLinkUtilityTolerance;
  report(3, ordering && wf_full && bf_min,
         fmt("U(ij) milp-0 %.6f, milp-0.5 %.6f, milp-1 %.6f (strict order %s); wf %.6f; "
             "bf %.6f vs mean bw_min/bw_max %.6f",
             u0, u5, u1, ordering ? "holds" : "violated", wf.totals.mean_link_utility,
             bf.totals.mean_link_utility, bf_expected));
}

struct LargeRun {
  std::uint64_t seed;
  ComparisonRow bf, wf, ahp, topsis;
};

std::vector<LargeRun> large_runs() {
  std::vector<LargeRun> out;
  for (std::uint64_t seed : {1, 2, 3}) {
    auto cfg = preset_config("paper-large");
    cfg.sim.seed = seed;
    std::vector<SimulationConfig> cfgs;
    for (const char *s : {"bf", "wf", "ahp:network", "topsis:network"}) {
      SimulationConfig sim = cfg.sim;
      sim.scheduler = parse_scheduler_spec(s);
      cfgs.push_back(sim);
    }
    auto rows = compare(cfgs);
    out.push_back({seed, rows[0], rows[1], rows[2], rows[3]});
  }
  return out;
}

void criterion_4(const std::vector<LargeRun> &runs) {
  bool ok = true;
  std::string detail;
  for (const auto &r : runs) {
    bool bf_slowest = r.bf.mean_delay > r.wf.mean_delay && r.bf.mean_delay > r.ahp.mean_delay &&
                      r.bf.mean_delay > r.topsis.mean_delay;
    bool bf_tightest = r.bf.mean_link_fragmentation < r.wf.mean_link_fragmentation &&
                       r.bf.mean_link_fragmentation < r.ahp.mean_link_fragmentation &&
                       r.bf.mean_link_fragmentation < r.topsis.mean_link_fragmentation;
    bool mc_faster = r.ahp.mean_delay < r.wf.mean_delay && r.topsis.mean_delay < r.wf.mean_delay;
    ok = ok && bf_slowest && bf_tightest && mc_faster;
    detail += fmt("[seed %llu delay bf/wf/ahp/topsis %.3f/%.3f/%.3f/%.3f, F(E^s) %.4f/%.4f/%.4f/%.4f] ",
                  static_cast<unsigned long long>(r.seed), r.bf.mean_delay, r.wf.mean_delay,
                  r.ahp.mean_delay, r.topsis.mean_delay, r.bf.mean_link_fragmentation,
                  r.wf.mean_link_fragmentation, r.ahp.mean_link_fragmentation,
                  r.topsis.mean_link_fragmentation);
  }
  report(4, ok, detail);
}

void criterion_5(const std::vector<LargeRun> &runs) {
  const auto &r = runs.front();
  double t = r.topsis.runtime_seconds, a = r.ahp.runtime_seconds, b = r.bf.runtime_seconds;
  bool budget = t <= kTopsisRuntimeBudget;
  bool order = t < a && a < b;
  report(5, budget && order,
         fmt("paper-large seed 1: topsis %.2f s (budget %.0f s), ahp %.2f s, bf %.2f s, "
             "order topsis < ahp < bf %s",
             t, kTopsisRuntimeBudget, a, b, order ? "holds" : "violated"));
}

void criterion_6() {
  std::mt19937_64 rng(6006);
  const std::vector<double> levels = {5.0, 10.0, 10.0, 20.0, 40.0};
  int queries = 0, mismatches = 0, graphs = 0;
  while (queries < 1000) {
    int servers = 2 + static_cast<int>(rng() % 9);
    int switches = 1 + static_cast<int>(rng() % (20 - servers));
    double p = std::uniform_real_distribution<double>(0.0, 0.3)(rng);
    auto dc = oracle::random_graph(rng, servers, switches, p, levels, {4.0, 4.0});
    ++graphs;
    for (int q = 0; q < 25 && queries < 1000; ++q) {
      ServerId a = static_cast<ServerId>(rng() % servers);
      ServerId b = static_cast<ServerId>(rng() % servers);
      if (a == b) continue;
      double demand = static_cast<double>(rng() % 45);
      auto got = widest_shortest_path(dc, a, b, demand);
      auto want = oracle::brute_force_path(dc, a, b, demand);
      ++queries;
      bool same = got.has_value() == want.has_value();
      if (same && got) same = got->route.vertices == want->vertices && got->bottleneck == want->bottleneck;
      if (!same) ++mismatches;
    }
  }
  report(6, mismatches == 0,
         fmt("%d queries on %d graphs (<= 20 vertices), %d mismatches", queries, graphs, mismatches));
}

void criterion_7() {
  std::mt19937_64 rng(7007);
  std::size_t cases = 0, failed = 0;
  auto expect = [&](bool ok) {
    ++cases;
    if (!ok) ++failed;
  };

  using Fn = std::function<std::optional<Placement>(const DataCenter &, const Request &)>;
  const std::vector<Fn> schedulers = {
      best_fit,
      worst_fit,
      [](const DataCenter &dc, const Request &r) {
        return schedule_multicriteria(dc, r, RankMethod::kAhp, weight_schema("clustering"));
      },
      [](const DataCenter &dc, const Request &r) {
        return schedule_multicriteria(dc, r, RankMethod::kTopsis, weight_schema("network"));
      },
  };

  for (int round = 0; round < 1500; ++round) {
    auto dc = oracle::small_dc(rng, 2 + static_cast<int>(rng() % 3));
    oracle::preload(rng, dc, static_cast<int>(rng() % 4), 100);
    auto req = oracle::random_request(rng, 1 + static_cast<int>(rng() % 5), 3, 4, 3, 6, 12, 1);
    for (const auto &schedule : schedulers) {
      auto p = schedule(dc, req);
      if (!p) continue;
      auto violations = check_constraints(dc, {{&req, &*p}});
      bool capacity = true, pods = true;
      for (const auto &v : violations) {
        if (v.constraint == "pod-integrity") pods = false;
        else capacity = false;
      }
      expect(capacity);
      expect(pods);
      auto before = dc;
      dc.apply(*p);
      bool in_range = dc.audit().empty();
      for (const auto &s : dc.servers()) {
        for (std::size_t r = 0; r < s.residual.size(); ++r) {
          in_range = in_range && s.residual[r] >= 0.0 && s.residual[r] <= s.capacity[r];
        }
      }
      expect(in_range);
      dc.release(*p);
      bool identical = dc.audit().empty();
      for (std::size_t u = 0; u < dc.num_servers(); ++u) {
        for (std::size_t r = 0; r < dc.num_resources(); ++r) {
          identical = identical && dc.server_residual_units(static_cast<ServerId>(u), r) ==
                                       before.server_residual_units(static_cast<ServerId>(u), r);
        }
        identical = identical && dc.server(static_cast<ServerId>(u)).active ==
                                     before.server(static_cast<ServerId>(u)).active;
      }
      for (std::size_t l = 0; l < dc.links().size(); ++l) {
        identical = identical && dc.link_residual_units(static_cast<LinkId>(l)) ==
                                     before.link_residual_units(static_cast<LinkId>(l)) &&
                    dc.link(static_cast<LinkId>(l)).active == before.link(static_cast<LinkId>(l)).active;
      }
      expect(identical);
    }
  }

  std::uniform_int_distribution<int> level(0, 8);
  const char *schemas[] = {"flat", "clustering", "network"};
  for (int round = 0; round < 1500; ++round) {
    std::size_t n = 1 + rng() % 24;
    CriteriaMatrix m;
    m.n_servers = n;
    m.n_criteria = kDefaultCriteria;
    for (std::size_t c = 0; c < kDefaultCriteria; ++c) {
      for (std::size_t u = 0; u < n; ++u) {
        m.values.push_back(c == 2 ? static_cast<double>(level(rng) % 2) : 3.0 * level(rng));
      }
    }
    auto w = weight_schema(schemas[round % 3]);
    for (auto rank : {&ahp_rank, &topsis_rank}) {
      auto r = rank(m, w);
      std::vector<int> seen(n, 0);
      bool perm = r.order.size() == n;
      for (ServerId s : r.order) {
        perm = perm && s >= 0 && static_cast<std::size_t>(s) < n && ++seen[static_cast<std::size_t>(s)] == 1;
      }
      for (std::size_t k = 1; perm && k < n; ++k) {
        perm = r.score[static_cast<std::size_t>(r.order[k - 1])] >= r.score[static_cast<std::size_t>(r.order[k])];
      }
      expect(perm);
      if (rank == &topsis_rank) {
        bool bounded = true;
        for (double s : r.score) bounded = bounded && s >= 0.0 && s <= 1.0;
        expect(bounded);
      }
    }
  }

  std::uniform_real_distribution<double> saaty(1.0, 10.0);
  for (int round = 0; round < 3000; ++round) {
    double a = saaty(rng), b = saaty(rng);
    if (round % 10 == 0) b = a;
    bool ok = detail::ahp_comparison(a, a) == 1.0;
    if (a != b) {
      ok = ok && std::abs(detail::ahp_comparison(a, b) * detail::ahp_comparison(b, a) - 1.0) <=
                     kReciprocityTolerance;
    } else {
      ok = ok && detail::ahp_comparison(a, b) == 1.0;
    }
    expect(ok);
  }

  report(7, cases >= 10000 && failed == 0,
         fmt("%zu property cases, %zu failures", cases, failed));
}

void criterion_8() {
  std::mt19937_64 rng(8008);
  int instances = 0, bad = 0;
  double worst = 0.0;
  auto check = [&](const DataCenter &dc, const Request &req, double alpha) {
    auto res = solve_exact(dc, req, alpha);
    if (!res.placement) return;
    auto model = build_milp_model(dc, req, alpha);
    auto doc = parse_lp(export_lp(model));
    auto sol = parse_lp_solution(dump_lp_solution(lp_solution_from_placement(model, *res.placement)));
    auto result = check_lp_solution(doc, sol, kSlackTolerance);
    ++instances;
    worst = std::min(worst, result.min_slack);
    if (!result.violations.empty() || result.min_slack < -kSlackTolerance) ++bad;
  };
  const double alphas[] = {0.0, 0.5, 1.0};
  int k = 0;
  while (instances < 25) {
    auto inst = small_instance(rng);
    check(inst.dc, inst.req, alphas[k++ % 3]);
  }
  // Fat-tree instances over a partly loaded k=4 fabric.
  WorkloadConfig wc;
  wc.n_requests = 400;
  wc.containers_per_request = 3;
  auto workload = generate_workload(wc, 8);
  auto dc = build_fat_tree(4, {24.0, 256.0}, 1000.0);
  std::size_t next = 0;
  while (instances < 50 && next < workload.size()) {
    const auto &req = workload[next++];
    check(dc, req, alphas[next % 3]);
    auto p = best_fit(dc, req);
    if (p) dc.apply(*p);
  }
  report(8, instances >= 50 && bad == 0,
         fmt("%d instances, %d with a violated row, min slack %.3g", instances, bad, worst));
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  auto runs = large_runs();
  criterion_4(runs);
  criterion_5(runs);
  criterion_6();
  criterion_7();
  criterion_8();
  std::printf("%d of 8 criteria failed (%.1f s)\n", failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
