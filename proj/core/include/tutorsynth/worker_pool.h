#ifndef TUTORSYNTH_WORKER_POOL_H_
#define TUTORSYNTH_WORKER_POOL_H_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace tutorsynth {

// Runs task(i) for every i in [0, count) on at most `workers` threads and
// blocks until all finish. Tasks pull indices from a shared counter, so the
// caller must write results into per-index slots. `task` must not throw.
inline void ParallelFor(std::size_t count, int workers,
                        const std::function<void(std::size_t)>& task) {
  std::size_t threads = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::max(workers, 1)), 1, std::max<std::size_t>(count, 1));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
        task(i);
    });
  }
}

}  // namespace tutorsynth

#endif  // TUTORSYNTH_WORKER_POOL_H_
