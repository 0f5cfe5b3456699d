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

#include <random>

#include "doctest.h"
#include "netsched/baselines.h"
#include "netsched/exact.h"
#include "netsched/multicriteria.h"
#include "oracles.h"

using namespace netsched;

namespace {

Request single(RequestId id, Resources lo, Resources hi) {
  Request r;
  r.id = id;
  r.containers = {{std::move(lo), std::move(hi)}};
  r.pods = {{0}};
  r.finalize();
  return r;
}

DataCenter two_servers(double cpu = 8.0) {
  return DataCenter({{cpu, 16.0}, {cpu, 16.0}}, 1, {{0, 2, 100.0}, {1, 2, 100.0}});
}

}  // namespace

TEST_CASE("best fit: first request lands on server 0 at the minimum") {
  auto dc = build_fat_tree(4, {24.0, 256.0}, 1000.0);
  auto p = best_fit(dc, single(1, {1.0, 2.0}, {2.0, 4.0}));
  REQUIRE(p);
  CHECK(p->container_to_server[0] == 0);
  CHECK(p->allocated_caps[0] == Resources{1.0, 2.0});
}

TEST_CASE("best fit consolidates") {
  auto dc = two_servers();
  auto a = best_fit(dc, single(1, {1.0, 1.0}, {2.0, 2.0}));
  REQUIRE(a);
  dc.apply(*a);
  auto b = best_fit(dc, single(2, {1.0, 1.0}, {2.0, 2.0}));
  REQUIRE(b);
  CHECK(a->container_to_server[0] == b->container_to_server[0]);
}

TEST_CASE("pod larger than any server is rejected") {
  auto dc = build_fat_tree(4, {24.0, 256.0}, 1000.0);
  Request r;
  r.containers = {{{13.0, 1.0}, {13.0, 1.0}}, {{12.0, 1.0}, {12.0, 1.0}}};
  r.pods = {{0, 1}};
  r.finalize();
  CHECK_FALSE(best_fit(dc, r).has_value());
  CHECK_FALSE(worst_fit(dc, r).has_value());
}

TEST_CASE("worst fit spreads") {
  auto dc = two_servers();
  auto a = worst_fit(dc, single(1, {1.0, 1.0}, {2.0, 2.0}));
  REQUIRE(a);
  dc.apply(*a);
  auto b = worst_fit(dc, single(2, {1.0, 1.0}, {2.0, 2.0}));
  REQUIRE(b);
  CHECK(a->container_to_server[0] != b->container_to_server[0]);
}

TEST_CASE("worst fit grants maxima when capacity is ample") {
  auto dc = build_fat_tree(4, {24.0, 256.0}, 1000.0);
  Request r;
  r.containers = {{{1.0, 1.0}, {2.0, 4.0}}, {{1.0, 2.0}, {2.0, 3.0}}, {{1.0, 1.0}, {1.0, 1.0}}};
  r.pods = {{0, 2}, {1}};
  r.vlinks = {{0, 1, 5.0, 40.0}, {0, 2, 1.0, 7.0}};
  r.finalize();
  auto p = worst_fit(dc, r);
  REQUIRE(p);
  for (std::size_t i = 0; i < r.containers.size(); ++i) {
    CHECK(utility_container(p->allocated_caps[i], r.containers[i]) == 1.0);
  }
  for (std::size_t e = 0; e < r.vlinks.size(); ++e) {
    CHECK(utility_link(p->allocated_bw[e], r.vlinks[e]) == 1.0);
  }
}

TEST_CASE("worst fit grants the largest feasible value") {
  DataCenter dc({{3.0, 16.0}}, 1, {{0, 1, 100.0}});
  auto p = worst_fit(dc, single(1, {2.0, 1.0}, {4.0, 1.0}));
  REQUIRE(p);
  CHECK(p->allocated_caps[0][kCpu] == 3.0);
}

TEST_CASE("best fit grants bandwidth minima") {
  auto dc = build_fat_tree(4, {4.0, 8.0}, 1000.0);
  Request r;
  r.containers = {{{3.0, 1.0}, {3.0, 1.0}}, {{3.0, 1.0}, {3.0, 1.0}}};
  r.pods = {{0}, {1}};
  r.vlinks = {{0, 1, 5.0, 40.0}};
  r.finalize();
  auto p = best_fit(dc, r);
  REQUIRE(p);
  CHECK(p->container_to_server[0] != p->container_to_server[1]);
  CHECK(p->allocated_bw[0] == 5.0);
  CHECK_FALSE(p->vlink_to_path[0].empty());
}

TEST_CASE("routing failure rejects the request") {
  auto dc = DataCenter({{2.0, 2.0}, {2.0, 2.0}}, 1, {{0, 2, 3.0}, {1, 2, 3.0}});
  Request r;
  r.containers = {{{2.0, 1.0}, {2.0, 1.0}}, {{2.0, 1.0}, {2.0, 1.0}}};
  r.pods = {{0}, {1}};
  r.vlinks = {{0, 1, 5.0, 6.0}};
  r.finalize();
  CHECK_FALSE(best_fit(dc, r).has_value());
  CHECK_FALSE(worst_fit(dc, r).has_value());
}

TEST_CASE("baseline placements are feasible and deterministic") {
  std::mt19937_64 rng(21);
  int placed = 0;
  for (int round = 0; round < 200; ++round) {
    auto dc = oracle::small_dc(rng, 2 + static_cast<int>(rng() % 3));
    oracle::preload(rng, dc, 2, 100);
    auto req = oracle::random_request(rng, 1 + static_cast<int>(rng() % 4), 3, 4, 3, 5, 8, 1);
    for (auto *fn : {&best_fit, &worst_fit}) {
      auto p = fn(dc, req);
      auto again = fn(dc, req);
      REQUIRE(p.has_value() == again.has_value());
      if (!p) continue;
      ++placed;
      CHECK(p->container_to_server == again->container_to_server);
      CHECK(p->allocated_caps == again->allocated_caps);
      CHECK(p->allocated_bw == again->allocated_bw);
      CHECK(check_constraints(dc, {{&req, &*p}}).empty());
      if (fn == &best_fit) {
        for (std::size_t i = 0; i < req.containers.size(); ++i) {
          CHECK(p->allocated_caps[i] == req.containers[i].c_min);
        }
      }
      auto copy = dc;
      copy.apply(*p);
      CHECK(copy.audit().empty());
    }
  }
  CHECK(placed > 100);
}
