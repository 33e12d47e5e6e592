// Fixed-partition worker pool. Task i always produces slot i, so results do
// not depend on the number of workers.

#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace zetalab {

/// Runs task(i) for i in [0, count) on up to `workers` threads. If any task
/// throws, the exception of the lowest failing index is rethrown after all
/// threads have joined.
inline void parallel_for(int count, int workers, const std::function<void(int)>& task) {
  std::vector<std::exception_ptr> failures(static_cast<size_t>(std::max(count, 0)));
  std::atomic<int> next{0};
  auto run = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        failures[static_cast<size_t>(i)] = std::current_exception();
      }
    }
  };
  const int threads = std::clamp(workers, 1, std::max(count, 1));
  if (threads == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(run);
    for (auto& th : pool) th.join();
  }
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
}

}  // namespace zetalab
