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

#include <optional>
#include <string_view>
#include <vector>

#include "netsched/placement.h"
#include "netsched/topology.h"
#include "netsched/workload.h"

namespace netsched {

// Criteria order: every server resource (CPU, RAM), then the activity flag
// f_u, then the residual bandwidth of the server's incident links. All are
// benefit criteria.
inline constexpr std::size_t kDefaultCriteria = kDefaultResources + 2;

class WeightVector {
 public:
  // Throws kInvalidParameter unless every weight is in [0,1] and the sum is
  // within 1e-9 of 1.
  explicit WeightVector(std::vector<double> weights);

  const std::vector<double> &values() const { return weights_; }
  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t c) const { return weights_[c]; }

 private:
  std::vector<double> weights_;
};

// "flat", "clustering" or "network"; throws kInvalidParameter otherwise.
WeightVector weight_schema(std::string_view name);

// Criterion-major: value(c, u) = values[c * n_servers + u].
struct CriteriaMatrix {
  std::vector<double> values;
  std::size_t n_servers = 0;
  std::size_t n_criteria = 0;

  double at(std::size_t c, std::size_t u) const { return values[c * n_servers + u]; }
};

CriteriaMatrix build_criteria_matrix(const DataCenter &dc);

struct Ranking {
  // Server ids, best first; equal scores keep ascending id order.
  std::vector<ServerId> order;
  // Indexed by server id.
  std::vector<double> score;
};

Ranking ahp_rank(const CriteriaMatrix &m, const WeightVector &w);
Ranking topsis_rank(const CriteriaMatrix &m, const WeightVector &w);

enum class RankMethod { kAhp, kTopsis };
RankMethod parse_rank_method(std::string_view name);
std::string_view rank_method_name(RankMethod method);

// One ranking per request; pods (largest c_min first) take the first feasible
// server in rank order. Capacities and bandwidth are granted at the largest
// feasible value inside their intervals.
std::optional<Placement> schedule_multicriteria(const DataCenter &dc, const Request &req,
                                                RankMethod method, const WeightVector &w);

namespace detail {

// Local priorities of a column of comparable values: each value is rescaled
// into [1,10], compared pairwise (difference above, reciprocal difference
// below, 1 when equal), the comparison matrix is column-normalised and its row
// means returned. Equal values are folded together and reductions run over
// the distinct values in ascending order, so the result is independent of
// the number of workers.
std::vector<double> ahp_local_priorities(const std::vector<double> &values);

// Same rescaling as above.
std::vector<double> scale_to_saaty_range(const std::vector<double> &values);

inline double ahp_comparison(double a, double b) {
  if (a > b) return a - b;
  if (a < b) return 1.0 / (b - a);
  return 1.0;
}

}  // namespace detail

}  // namespace netsched
