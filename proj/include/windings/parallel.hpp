#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

namespace windings {

/// 0 means one worker per hardware thread.
unsigned resolve_workers(unsigned requested);

/// out[i] = f(i) for i < n, computed on `workers` threads. Results are keyed
/// by index, so the output never depends on scheduling. The first exception
/// thrown by f is rethrown after all workers stop.
template <class F>
auto parallel_map(std::size_t n, unsigned workers, F&& f) {
  using R = std::invoke_result_t<F&, std::size_t>;
  static_assert(!std::is_same_v<R, bool>, "vector<bool> elements cannot be written concurrently");
  std::vector<R> out(n);
  const unsigned w = std::min<std::size_t>(resolve_workers(workers), n == 0 ? 1 : n);
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::atomic<std::size_t> cursor{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= n || failed.load()) return;
      try {
        out[i] = f(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < w; ++k) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace windings
