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

#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "netsched/error.h"
#include "netsched/exact.h"
#include "oracles.h"

using namespace netsched;

namespace {

DataCenter pair_dc() {
  return DataCenter({{8.0, 16.0}, {8.0, 16.0}}, 1, {{0, 2, 100.0}, {1, 2, 100.0}});
}

Request one_container() {
  Request r;
  r.id = 1;
  r.containers = {{{1.0, 2.0}, {2.0, 4.0}}};
  r.pods = {{0}};
  r.finalize();
  return r;
}

Request linked() {
  Request r;
  r.id = 2;
  r.containers = {{{1.0, 1.0}, {2.0, 4.0}}, {{1.0, 2.0}, {2.0, 2.0}}, {{1.0, 1.0}, {1.0, 2.0}}};
  r.pods = {{0, 2}, {1}};
  r.vlinks = {{0, 1, 5.0, 10.0}, {0, 2, 1.0, 3.0}};
  r.finalize();
  return r;
}

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

double coefficient(const LpDocument &doc, const std::string &var) {
  for (const auto &[name, c] : doc.objective) {
    if (name == var) return c;
  }
  return 0.0;
}

}  // namespace

TEST_CASE("one container on two servers matches the golden file") {
  auto text = export_lp(build_milp_model(pair_dc(), one_container(), 0.0));
  auto golden = slurp(std::string(NETSCHED_GOLDEN_DIR) + "/one_container_two_servers_alpha0.lp");
  REQUIRE_FALSE(golden.empty());
  CHECK(text == golden);
}

TEST_CASE("export is deterministic") {
  auto dc = build_fat_tree(4, {24.0, 256.0}, 1000.0);
  auto model = build_milp_model(dc, linked(), 0.5);
  CHECK(export_lp(model) == export_lp(model));
  CHECK(export_lp(build_milp_model(dc, linked(), 0.5)) == export_lp(model));
}

TEST_CASE("model without containers") {
  auto dc = pair_dc();
  Request empty;
  auto model = build_milp_model(dc, empty, 0.5);
  auto doc = parse_lp(export_lp(model));
  CHECK_FALSE(doc.objective.empty());
  for (const auto &[name, c] : doc.objective) {
    CHECK((name.rfind("f_", 0) == 0 || name.rfind("fl_", 0) == 0));
  }
  CHECK(doc.objective_constant == 0.0);
  auto check = check_lp_solution(doc, {});
  CHECK(check.violations.empty());
  CHECK(check.objective_value == 0.0);
}

TEST_CASE("alpha shows up in the objective") {
  auto dc = pair_dc();
  auto half = parse_lp(export_lp(build_milp_model(dc, linked(), 0.5)));
  // (1 - alpha) / |servers|
  CHECK(coefficient(half, "f_0") == 0.25);
  // (1 - alpha) / |logical edges|
  CHECK(coefficient(half, "fl_0_1") == 0.5);
  // -alpha / (|R| c_max)
  CHECK(coefficient(half, "c_0_0_1") == -0.5 / (2 * 4.0));
  CHECK(coefficient(half, "bw_0_1_0_1") == -0.05);
  // alpha (|containers| + routed links)
  CHECK(half.objective_constant == 2.0);

  auto zero = parse_lp(export_lp(build_milp_model(dc, linked(), 0.0)));
  CHECK(coefficient(zero, "c_0_0_1") == 0.0);
  CHECK(coefficient(zero, "f_0") == 0.5);
}

TEST_CASE("x variable count") {
  auto dc = build_fat_tree(4, {24.0, 256.0}, 1000.0);
  WorkloadConfig cfg;
  auto w = generate_workload(cfg, 1);
  auto doc = parse_lp(export_lp(build_milp_model(dc, w[0], 0.5)));
  std::size_t x = 0;
  for (const auto &b : doc.binaries) {
    if (b.rfind("x_", 0) == 0) ++x;
  }
  CHECK(x == 80);
}

TEST_CASE("solutions from the exact solver satisfy every row") {
  std::mt19937_64 rng(8);
  int checked = 0;
  for (int round = 0; round < 40; ++round) {
    auto dc = oracle::small_dc(rng, 2 + static_cast<int>(rng() % 3));
    oracle::preload(rng, dc, 2, 100);
    auto req = oracle::random_request(rng, 1 + static_cast<int>(rng() % 4), 3, 4, 3, 6, 12, 1);
    for (double alpha : {0.0, 0.5, 1.0}) {
      auto res = solve_exact(dc, req, alpha);
      if (!res.placement) continue;
      auto model = build_milp_model(dc, req, alpha);
      auto doc = parse_lp(export_lp(model));
      auto sol = lp_solution_from_placement(model, *res.placement);
      auto back = parse_lp_solution(dump_lp_solution(sol));
      CHECK(back == sol);
      auto check = check_lp_solution(doc, back);
      CHECK(check.violations.empty());
      CHECK(check.min_slack >= -1e-9);
      CHECK(check.objective_value == doctest::Approx(res.objective.total).epsilon(1e-9));
      ++checked;
    }
  }
  CHECK(checked > 40);
}

TEST_CASE("a broken solution is reported") {
  auto dc = pair_dc();
  auto req = linked();
  auto res = solve_exact(dc, req, 0.5);
  REQUIRE(res.placement);
  auto model = build_milp_model(dc, req, 0.5);
  auto doc = parse_lp(export_lp(model));
  auto sol = lp_solution_from_placement(model, *res.placement);
  sol["x_0_0"] = 1.0;
  sol["x_0_1"] = 1.0;
  CHECK_FALSE(check_lp_solution(doc, sol).violations.empty());
  sol = lp_solution_from_placement(model, *res.placement);
  sol["x_1_0"] = 0.5;
  CHECK_FALSE(check_lp_solution(doc, sol).violations.empty());
}

TEST_CASE("malformed LP text") {
  CHECK_THROWS_AS(parse_lp("Minimize\n obj: 2 x +\nSubject To\n c1: x <= \nEnd\n"), Error);
  CHECK_THROWS_AS(parse_lp_solution("x_0_0\n"), Error);
}

TEST_CASE("duplicate container pairs are rejected") {
  auto req = linked();
  req.vlinks.push_back({1, 0, 1.0, 2.0});
  req.finalize();
  CHECK_THROWS_AS(build_milp_model(pair_dc(), req, 0.5), Error);
}
