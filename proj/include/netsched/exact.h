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

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "netsched/placement.h"
#include "netsched/topology.h"
#include "netsched/workload.h"

namespace netsched {

// U(i): mean over resources of allocated/c_max. Throws kInvalidInput when the
// allocation leaves [c_min, c_max].
double utility_container(const Resources &allocated, const ContainerSpec &spec);

// U(ij) = allocated/bw_max for a link carried by one logical edge (or the
// host bus). Throws kInvalidInput outside [bw_min, bw_max].
double utility_link(double allocated_bw, const VirtualLink &vlink);

enum class LinkUtilityMode {
  // One logical server-to-server edge per virtual link.
  kLogicalEdge,
  // Allocated bandwidth summed over every physical hop, for comparison only.
  kPhysicalHopSum,
};

struct ObjectiveBreakdown {
  double alpha = 0.0;
  // sum(1 - U(i)) + sum(1 - U(ij))
  double utility_term = 0.0;
  // active servers / |N^s| + active logical edges / |E^s|
  double fragmentation_term = 0.0;
  double total = 0.0;
  std::size_t active_servers = 0;
  std::size_t active_logical_edges = 0;
};

std::string objective_json(const ObjectiveBreakdown &objective);

struct PlacedRequest {
  const Request *request = nullptr;
  const Placement *placement = nullptr;
};

struct Violation {
  // "server-capacity", "link-capacity", "container-interval",
  // "bandwidth-interval", "pod-integrity", "single-host" or "endpoint"
  // (route does not join the hosting servers).
  std::string constraint;
  std::string detail;
};

// Checks placements jointly against the residual state of dc (placements not
// yet applied). Violations are data: an empty result means feasible.
std::vector<Violation> check_constraints(const DataCenter &dc,
                                         const std::vector<PlacedRequest> &placed);

// Objective of applying `placed` on top of dc. Activity flags come from
// occupancy: servers/server pairs already active in dc plus those the
// placements touch. Throws kConstraintViolation naming the first violated
// constraint family.
ObjectiveBreakdown objective(const DataCenter &dc, const std::vector<PlacedRequest> &placed,
                             double alpha,
                             LinkUtilityMode mode = LinkUtilityMode::kLogicalEdge);

// Server-to-server edge of the MILP, backed by a physical route.
struct LogicalEdge {
  ServerId a = 0;
  ServerId b = 0;
  Route path;
  // Bottleneck residual of the backing route when the model was built.
  double capacity = 0.0;
  bool active = false;
};

// Single-request MILP instance over the residual state of a data center.
struct MilpModel {
  Request request;
  double alpha = 0.0;
  std::size_t num_servers = 0;
  std::size_t num_resources = 0;
  std::vector<Resources> server_residual;
  std::vector<bool> server_active;
  // Every connected server pair, in edge_index order.
  std::vector<LogicalEdge> edges;
  // Virtual links that need a logical edge (endpoints in different pods).
  std::vector<int> routed_vlinks;
};

// Logical edges are routed with widest_shortest_path on current residuals.
// Throws kInvalidInput for invalid requests or duplicate container pairs.
MilpModel build_milp_model(const DataCenter &dc, const Request &req, double alpha);

// CPLEX LP text: objective, constraint rows, bounds, binaries. Variable names:
// x_i_u, xl_i_j_u_v, c_i_u_r, bw_i_j_u_v, f_u, fl_u_v.
std::string export_lp(const MilpModel &model);

// Parsed LP document, enough to evaluate a solution against every row.
struct LpRow {
  std::string name;
  std::vector<std::pair<std::string, double>> terms;
  // '<', '>' or '='
  char sense = '<';
  double rhs = 0.0;
};

struct LpBound {
  double lower = 0.0;
  double upper = 0.0;
};

struct LpDocument {
  std::vector<std::pair<std::string, double>> objective;
  double objective_constant = 0.0;
  std::vector<LpRow> rows;
  std::map<std::string, LpBound> bounds;
  std::vector<std::string> binaries;
};

LpDocument parse_lp(const std::string &text);

using LpSolution = std::map<std::string, double>;

// Variable values implied by a placement of model.request; every variable in
// the model appears (zeros included).
LpSolution lp_solution_from_placement(const MilpModel &model, const Placement &placement);
std::string dump_lp_solution(const LpSolution &solution);
LpSolution parse_lp_solution(const std::string &text);

struct LpCheckResult {
  // Rows/bounds with slack below -tolerance, and non-integral binaries.
  std::vector<std::string> violations;
  double min_slack = 0.0;
  double objective_value = 0.0;
};

// Missing variables are treated as 0.
LpCheckResult check_lp_solution(const LpDocument &doc, const LpSolution &solution,
                                double tolerance = 1e-9);

struct ExactOptions {
  // Upper bound on |servers|^|pods|; larger instances raise kTooLarge.
  double max_assignments = 1e6;
  bool prune = true;
  LinkUtilityMode link_mode = LinkUtilityMode::kLogicalEdge;
};

struct ExactCandidate {
  Placement placement;
  ObjectiveBreakdown objective;
};

// Evaluates one pod -> server assignment of a request with the optimal
// continuous allocation for that assignment: everything starts at its
// minimum, then (for alpha > 0) each server resource and each link is filled
// in order of marginal utility per unit (smallest maximum first). Virtual
// links between different pods must span two distinct servers. Throws
// kInvalidInput for requests that fail validate_request.
class ExactEvaluator {
 public:
  ExactEvaluator(const DataCenter &dc, const Request &req, double alpha,
                 LinkUtilityMode mode = LinkUtilityMode::kLogicalEdge);
  ~ExactEvaluator();
  ExactEvaluator(const ExactEvaluator &) = delete;
  ExactEvaluator &operator=(const ExactEvaluator &) = delete;

  std::optional<ExactCandidate> evaluate(const std::vector<ServerId> &pod_to_server) const;

  const DataCenter &dc() const { return dc_; }
  const Request &request() const { return req_; }
  double alpha() const { return alpha_; }
  // Backing route of the logical edge between two distinct servers (cached).
  const LogicalEdge &logical_edge(ServerId a, ServerId b) const;

 private:
  friend class ExactSearch;
  struct Cache;

  const DataCenter &dc_;
  Request req_;
  double alpha_;
  LinkUtilityMode mode_;
  std::unique_ptr<Cache> cache_;
};

// Objectives within this distance are ties, resolved in favour of the
// lexicographically smaller assignment.
inline constexpr double kObjectiveTieTolerance = 1e-10;

struct ExactResult {
  std::optional<Placement> placement;
  ObjectiveBreakdown objective;
  std::vector<ServerId> pod_to_server;
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;
};

// Global minimiser of the weighted utility/fragmentation objective over all
// pod -> server assignments (pods are atomic), searched depth-first in
// lexicographic order with bound pruning.
ExactResult solve_exact(const DataCenter &dc, const Request &req, double alpha,
                        const ExactOptions &options = {});

}  // namespace netsched
