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

#include <cstddef>
#include <functional>

namespace netsched {

// Worker cap: NETSCHED_THREADS when set to a positive integer, otherwise the
// hardware concurrency.
std::size_t thread_cap();

// Runs body over disjoint [begin, end) chunks of [0, n). Chunks may execute
// concurrently; callers must write only to per-index outputs so that results
// do not depend on the schedule. Runs inline when n < grain or the cap is 1.
void parallel_for(std::size_t n, std::size_t grain,
                  const std::function<void(std::size_t, std::size_t)> &body);

}  // namespace netsched
