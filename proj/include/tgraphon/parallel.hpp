// Copyright 2026 The tgraphon Authors
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

#ifndef TGRAPHON_PARALLEL_HPP
#define TGRAPHON_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tgraphon {

struct ParallelOptions {
  unsigned threads = 0;  ///< 0 selects std::thread::hardware_concurrency()

  [[nodiscard]] unsigned resolved() const {
    if (threads > 0) {
      return threads;
    }
    return std::max(1U, std::thread::hardware_concurrency());
  }
};

/// Calls body(index) for every index in [0, count) over contiguous chunks.
/**
 * Work assignment never influences results as long as body(index) depends
 * only on index. The first exception thrown by any worker is rethrown.
 */
template <class Body>
void parallel_for(std::size_t count, const ParallelOptions& options, Body&& body) {
  const std::size_t workers = std::min<std::size_t>(options.resolved(), count);
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) {
      body(k);
    }
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = count * w / workers;
      const std::size_t end = count * (w + 1) / workers;
      pool.emplace_back([&, begin, end] {
        try {
          for (std::size_t k = begin; k < end; ++k) {
            body(k);
          }
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) {
            failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
}

}  // namespace tgraphon

#endif
