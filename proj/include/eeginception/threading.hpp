// Copyright 2026 The eeginception Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "eeginception/common.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace eeginc {

namespace detail {
inline std::atomic<int>& thread_count_storage() {
  static std::atomic<int> n{0};  // 0 = uninitialized
  return n;
}
}  // namespace detail

// Worker cap for the parallel loops below. Defaults to EEGINC_THREADS when
// set, else 1: single-threaded is the bitwise-reproducibility mode and the
// parallel paths only write disjoint slots, so results match it exactly.
inline int thread_count() {
  int n = detail::thread_count_storage().load();
  if (n == 0) {
    const char* env = std::getenv("EEGINC_THREADS");
    n = env ? std::atoi(env) : 1;
    if (n < 1) n = 1;
    detail::thread_count_storage().store(n);
  }
  return n;
}

inline void set_thread_count(int n) {
  detail::thread_count_storage().store(n < 1 ? 1 : n);
}

// Static block partition of [0, n). body(i) must touch only slot i's data.
template <typename Body>
void parallel_for(Index n, const Body& body) {
  const int workers = std::min<Index>(thread_count(), n);
  if (workers <= 1) {
    for (Index i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> threads;
  const Index chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const Index lo = static_cast<Index>(w) * chunk;
    const Index hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back([lo, hi, &body]() {
      for (Index i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : threads) t.join();
}

}  // namespace eeginc
