#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sptorsion::detail {

/// Runs fn(i) for i in [0, n) on up to `jobs` threads. Results are written by
/// index, so output order never depends on scheduling. The first exception
/// stops the remaining work and is rethrown.
template <typename Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  const auto threads_wanted =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1U, jobs), std::max<std::size_t>(n, 1)));
  {
    std::vector<std::jthread> threads;
    for (unsigned t = 1; t < threads_wanted; ++t) threads.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace sptorsion::detail
