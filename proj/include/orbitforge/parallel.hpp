#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace orbitforge {

namespace detail {
inline std::atomic<unsigned>& thread_count_setting() {
  static std::atomic<unsigned> value{1};
  return value;
}
}  // namespace detail

/// Number of worker threads used by parallel_for. Defaults to 1.
inline unsigned thread_count() { return detail::thread_count_setting().load(); }

/// 0 selects std::thread::hardware_concurrency().
inline void set_thread_count(unsigned count) {
  if (count == 0) count = std::max(1u, std::thread::hardware_concurrency());
  detail::thread_count_setting().store(count);
}

/// Calls fn(i) for every i in [0, count). Work is handed out by an atomic
/// counter; callers write results into pre-sized slots indexed by i, so the
/// outcome never depends on scheduling.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(thread_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(count);
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace orbitforge
