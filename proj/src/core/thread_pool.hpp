/*
 * Copyright (c) 2026 The stmine Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace stmine {

/// Fixed-size worker group for data-parallel loops. Each parallel_for call
/// runs its own set of threads; indices are handed out dynamically.
class ThreadPool {
 public:
  explicit ThreadPool(std::size_t threads) : threads_(std::max<std::size_t>(threads, 1)) {}

  std::size_t size() const noexcept { return threads_; }

  /// Calls body(worker, index) for every index in [0, n). If any call
  /// throws, remaining work is abandoned and the exception with the lowest
  /// index is rethrown.
  template <class Body>
  void parallel_for(std::size_t n, Body&& body) const {
    if (n == 0) return;
    const std::size_t workers = std::min(threads_, n);
    if (workers == 1) {
      for (std::size_t i = 0; i < n; ++i) body(std::size_t{0}, i);
      return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> abort{false};
    std::mutex error_mutex;
    std::exception_ptr error;
    std::size_t error_index = n;
    auto run = [&](std::size_t worker) {
      while (!abort.load(std::memory_order_relaxed)) {
        std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= n) break;
        try {
          body(worker, i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (i < error_index) {
            error_index = i;
            error = std::current_exception();
          }
          abort = true;
        }
      }
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run, w);
    run(0);
    pool.clear();
    if (error) std::rethrow_exception(error);
  }

 private:
  std::size_t threads_;
};

}  // namespace stmine
