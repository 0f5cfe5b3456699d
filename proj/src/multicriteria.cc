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

#include "netsched/multicriteria.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "netsched/error.h"
#include "netsched/parallel.h"
#include "placement_builder.h"

namespace netsched {

WeightVector::WeightVector(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw Error(ErrorCode::kInvalidParameter, "empty weight vector");
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0 && w <= 1.0)) {
      throw Error(ErrorCode::kInvalidParameter, "weights must lie in [0,1]");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidParameter, "weights must sum to 1");
  }
}

WeightVector weight_schema(std::string_view name) {
  // (CPU, RAM, Fragmentation, Bandwidth)
  if (name == "flat") return WeightVector({0.25, 0.25, 0.25, 0.25});
  if (name == "clustering") return WeightVector({0.17, 0.17, 0.5, 0.16});
  if (name == "network") return WeightVector({0.17, 0.17, 0.16, 0.5});
  throw Error(ErrorCode::kInvalidParameter, "unknown weighting schema '" + std::string(name) + "'");
}

CriteriaMatrix build_criteria_matrix(const DataCenter &dc) {
  CriteriaMatrix m;
  m.n_servers = dc.num_servers();
  const std::size_t num_r = dc.num_resources();
  m.n_criteria = num_r + 2;
  m.values.assign(m.n_criteria * m.n_servers, 0.0);
  for (const auto &server : dc.servers()) {
    auto u = static_cast<std::size_t>(server.id);
    for (std::size_t r = 0; r < num_r; ++r) m.values[r * m.n_servers + u] = server.residual[r];
    m.values[num_r * m.n_servers + u] = server.active ? 1.0 : 0.0;
    double bw = 0.0;
    for (const auto &adj : dc.neighbors(server.id)) bw += dc.link(adj.link).residual;
    m.values[(num_r + 1) * m.n_servers + u] = bw;
  }
  return m;
}

namespace {

void check_inputs(const CriteriaMatrix &m, const WeightVector &w) {
  if (m.n_criteria != w.size()) {
    throw Error(ErrorCode::kInvalidInput, "criteria count " + std::to_string(m.n_criteria) +
                                              " does not match " + std::to_string(w.size()) +
                                              " weights");
  }
  if (m.values.size() != m.n_criteria * m.n_servers) {
    throw Error(ErrorCode::kInvalidInput, "criteria matrix has the wrong length");
  }
  for (double v : m.values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kInvalidInput, "non-finite criterion value");
  }
}

Ranking finish(std::vector<double> score) {
  Ranking out;
  out.order.resize(score.size());
  std::iota(out.order.begin(), out.order.end(), 0);
  std::stable_sort(out.order.begin(), out.order.end(), [&](ServerId a, ServerId b) {
    return score[static_cast<std::size_t>(a)] > score[static_cast<std::size_t>(b)];
  });
  out.score = std::move(score);
  return out;
}

}  // namespace

namespace detail {

std::vector<double> scale_to_saaty_range(const std::vector<double> &values) {
  std::vector<double> out(values.size(), 1.0);
  if (values.empty()) return out;
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  double low = *lo;
  double span = *hi - *lo;
  if (!(span > 0.0)) return out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = 1.0 + 9.0 * (values[i] - low) / span;
  }
  return out;
}

std::vector<double> ahp_local_priorities(const std::vector<double> &values) {
  const std::size_t n = values.size();
  std::vector<double> scaled = scale_to_saaty_range(values);

  std::vector<double> distinct = scaled;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  const std::size_t d = distinct.size();
  std::vector<double> count(d, 0.0);
  std::vector<std::size_t> slot(n);
  for (std::size_t i = 0; i < n; ++i) {
    slot[i] = static_cast<std::size_t>(
        std::lower_bound(distinct.begin(), distinct.end(), scaled[i]) - distinct.begin());
    count[slot[i]] += 1.0;
  }

  // Column sums of the comparison matrix.
  std::vector<double> column(d, 0.0);
  parallel_for(d, 64, [&](std::size_t begin, std::size_t end) {
    for (std::size_t b = begin; b < end; ++b) {
      double sum = 0.0;
      for (std::size_t k = 0; k < d; ++k) sum += count[k] * ahp_comparison(distinct[k], distinct[b]);
      column[b] = sum;
    }
  });
  // Row means of the normalised matrix.
  std::vector<double> row(d, 0.0);
  parallel_for(d, 64, [&](std::size_t begin, std::size_t end) {
    for (std::size_t a = begin; a < end; ++a) {
      double sum = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        sum += count[k] * (ahp_comparison(distinct[a], distinct[k]) / column[k]);
      }
      row[a] = sum / static_cast<double>(n);
    }
  });
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = row[slot[i]];
  return out;
}

}  // namespace detail

Ranking ahp_rank(const CriteriaMatrix &m, const WeightVector &w) {
  check_inputs(m, w);
  const std::size_t n = m.n_servers;
  std::vector<double> criteria = detail::ahp_local_priorities(w.values());
  std::vector<std::vector<double>> local(m.n_criteria);
  for (std::size_t c = 0; c < m.n_criteria; ++c) {
    std::vector<double> column(m.values.begin() + static_cast<std::ptrdiff_t>(c * n),
                               m.values.begin() + static_cast<std::ptrdiff_t>((c + 1) * n));
    local[c] = detail::ahp_local_priorities(column);
  }
  std::vector<double> score(n, 0.0);
  parallel_for(n, 1024, [&](std::size_t begin, std::size_t end) {
    for (std::size_t u = begin; u < end; ++u) {
      double sum = 0.0;
      for (std::size_t c = 0; c < m.n_criteria; ++c) sum += criteria[c] * local[c][u];
      score[u] = sum;
    }
  });
  return finish(std::move(score));
}

Ranking topsis_rank(const CriteriaMatrix &m, const WeightVector &w) {
  check_inputs(m, w);
  const std::size_t n = m.n_servers;
  const std::size_t nc = m.n_criteria;

  // Per-criterion reductions run sequentially in ascending server order.
  std::vector<double> norm(nc, 0.0);
  std::vector<double> ideal(nc, 0.0);
  std::vector<double> anti(nc, 0.0);
  parallel_for(nc, 1, [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c) {
      double sq = 0.0;
      for (std::size_t u = 0; u < n; ++u) sq += m.at(c, u) * m.at(c, u);
      norm[c] = std::sqrt(sq);
      double hi = 0.0;
      double lo = 0.0;
      for (std::size_t u = 0; u < n; ++u) {
        double v = norm[c] > 0.0 ? (m.at(c, u) / norm[c]) * w[c] : 0.0;
        if (u == 0 || v > hi) hi = v;
        if (u == 0 || v < lo) lo = v;
      }
      ideal[c] = hi;
      anti[c] = lo;
    }
  });

  std::vector<double> score(n, 0.0);
  parallel_for(n, 1024, [&](std::size_t begin, std::size_t end) {
    for (std::size_t u = begin; u < end; ++u) {
      double plus = 0.0;
      double minus = 0.0;
      for (std::size_t c = 0; c < nc; ++c) {
        double v = norm[c] > 0.0 ? (m.at(c, u) / norm[c]) * w[c] : 0.0;
        plus += (v - ideal[c]) * (v - ideal[c]);
        minus += (v - anti[c]) * (v - anti[c]);
      }
      double to_ideal = std::sqrt(plus);
      double to_anti = std::sqrt(minus);
      double total = to_ideal + to_anti;
      score[u] = total > 0.0 ? to_anti / total : 0.0;
    }
  });
  return finish(std::move(score));
}

RankMethod parse_rank_method(std::string_view name) {
  if (name == "ahp") return RankMethod::kAhp;
  if (name == "topsis") return RankMethod::kTopsis;
  throw Error(ErrorCode::kInvalidParameter, "unknown ranking method '" + std::string(name) + "'");
}

std::string_view rank_method_name(RankMethod method) {
  return method == RankMethod::kAhp ? "ahp" : "topsis";
}

std::optional<Placement> schedule_multicriteria(const DataCenter &dc, const Request &req,
                                                RankMethod method, const WeightVector &w) {
  CriteriaMatrix m = build_criteria_matrix(dc);
  Ranking ranking = method == RankMethod::kAhp ? ahp_rank(m, w) : topsis_rank(m, w);

  detail::Reservation reservation(dc);
  std::vector<ServerId> pod_to_server(req.pods.size(), -1);
  for (int g : detail::pod_order(req)) {
    auto demand = detail::pod_min_units(req, g, dc.num_resources());
    ServerId chosen = -1;
    for (ServerId s : ranking.order) {
      if (reservation.fits(s, demand)) {
        chosen = s;
        break;
      }
    }
    if (chosen < 0) return std::nullopt;
    reservation.reserve(chosen, demand);
    pod_to_server[static_cast<std::size_t>(g)] = chosen;
  }
  detail::GrantPolicy policy{detail::Grant::kLargestFeasible, detail::Grant::kLargestFeasible,
                             detail::Grant::kLargestFeasible};
  return detail::realize(dc, req, pod_to_server, policy);
}

}  // namespace netsched
