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

#include "netsched/parallel.h"

#include <cstdlib>
#include <string>
#include <thread>

#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

namespace netsched {

std::size_t thread_cap() {
  static const std::size_t cap = [] {
    std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("NETSCHED_THREADS")) {
      try {
        long v = std::stol(env);
        if (v > 0) return static_cast<std::size_t>(v);
      } catch (...) {
      }
    }
    return hw;
  }();
  return cap;
}

namespace {

tbb::task_arena &arena() {
  static tbb::task_arena shared(static_cast<int>(thread_cap()));
  return shared;
}

}  // namespace

void parallel_for(std::size_t n, std::size_t grain,
                  const std::function<void(std::size_t, std::size_t)> &body) {
  if (n == 0) return;
  if (n < grain || thread_cap() <= 1) {
    body(0, n);
    return;
  }
  arena().execute([&] {
    tbb::parallel_for(tbb::blocked_range<std::size_t>(0, n, std::max<std::size_t>(grain, 1)),
                      [&](const tbb::blocked_range<std::size_t> &range) {
                        body(range.begin(), range.end());
                      });
  });
}

}  // namespace netsched
