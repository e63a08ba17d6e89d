#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace spcluster {

/// Worker count from SPCLUSTER_WORKERS, else hardware concurrency, at least 1.
inline unsigned default_workers() {
  if (const char* env = std::getenv("SPCLUSTER_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

/// Calls fn(i) for every i in [0, count). Work is handed out in index blocks;
/// fn must write only to slots owned by i. The first exception is rethrown.
template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  workers = std::max(1U, workers);
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  constexpr std::size_t kBlock = 64;
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    while (true) {
      const std::size_t begin = next.fetch_add(kBlock);
      if (begin >= count) return;
      const std::size_t end = std::min(count, begin + kBlock);
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  const unsigned spawned = static_cast<unsigned>(std::min<std::size_t>(workers, (count + kBlock - 1) / kBlock));
  std::vector<std::jthread> threads;
  threads.reserve(spawned);
  for (unsigned t = 0; t < spawned; ++t) threads.emplace_back(work);
  threads.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace spcluster
