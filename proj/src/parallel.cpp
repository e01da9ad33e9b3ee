// Copyright 2026 The gmm Authors
// SPDX-License-Identifier: Apache-2.0

#include "gmm/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gmm {

void parallel_for(int count, int workers, int chunk, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  chunk = std::max(chunk, 1);
  const int blocks = (count + chunk - 1) / chunk;
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, blocks);

  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto run = [&] {
    for (int b = next++; b < blocks; b = next++) {
      try {
        const int end = std::min(count, (b + 1) * chunk);
        for (int i = b * chunk; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next = blocks;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int t = 1; t < workers; ++t) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace gmm
