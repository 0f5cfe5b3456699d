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

#include "netsched/baselines.h"

#include "placement_builder.h"

namespace netsched {

namespace {

enum class Preference { kMostLoaded, kLeastLoaded };

std::optional<Placement> fit(const DataCenter &dc, const Request &req, Preference preference,
                             const detail::GrantPolicy &policy) {
  detail::Reservation reservation(dc);
  std::vector<ServerId> pod_to_server(req.pods.size(), -1);
  for (int g : detail::pod_order(req)) {
    auto demand = detail::pod_min_units(req, g, dc.num_resources());
    ServerId chosen = -1;
    double chosen_score = 0.0;
    for (const auto &server : dc.servers()) {
      if (!reservation.fits(server.id, demand)) continue;
      double score = reservation.residual_score(server.id);
      bool better = preference == Preference::kMostLoaded ? score < chosen_score
                                                          : score > chosen_score;
      if (chosen < 0 || better) {
        chosen = server.id;
        chosen_score = score;
      }
    }
    if (chosen < 0) return std::nullopt;
    reservation.reserve(chosen, demand);
    pod_to_server[static_cast<std::size_t>(g)] = chosen;
  }
  return detail::realize(dc, req, pod_to_server, policy);
}

}  // namespace

std::optional<Placement> best_fit(const DataCenter &dc, const Request &req) {
  return fit(dc, req, Preference::kMostLoaded,
             {detail::Grant::kMinimum, detail::Grant::kMinimum, detail::Grant::kMinimum});
}

std::optional<Placement> worst_fit(const DataCenter &dc, const Request &req) {
  return fit(dc, req, Preference::kLeastLoaded,
             {detail::Grant::kLargestFeasible, detail::Grant::kLargestFeasible,
              detail::Grant::kLargestFeasible});
}

}  // namespace netsched
