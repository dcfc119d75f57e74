#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace tilesim {

inline unsigned default_workers() {
  if (const char* env = std::getenv("TILESIM_WORKERS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Fan-out over independent jobs 0..n_jobs-1. Each job writes only its own
// result slot, so output is a pure function of the job index and results are
// identical for any worker count. The first exception aborts the remaining
// queue and is rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::size_t n_jobs, unsigned workers, Fn&& fn,
                  const std::function<void(std::size_t)>& progress = {}) {
  if (n_jobs == 0) return;
  workers = std::min<std::size_t>(std::max(1u, workers), n_jobs);
  if (workers == 1) {
    for (std::size_t i = 0; i < n_jobs; ++i) {
      fn(i);
      if (progress) progress(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::mutex progress_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (!failed.load(std::memory_order_relaxed)) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n_jobs) return;
        try {
          fn(i);
        } catch (...) {
          std::scoped_lock lock(error_mutex);
          if (!error) error = std::current_exception();
          failed.store(true);
          return;
        }
        if (progress) {
          std::scoped_lock lock(progress_mutex);
          progress(i);
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace tilesim
