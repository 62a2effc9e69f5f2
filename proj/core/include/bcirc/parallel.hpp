#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

namespace bcirc {

/// Runs fn(0) .. fn(trials - 1) on up to `threads` workers and returns the
/// results indexed by trial, so any reduction over them is independent of
/// scheduling. The first exception thrown by a worker is rethrown.
template <class F>
auto run_trials(std::size_t trials, unsigned threads, F&& fn)
    -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  using Result = std::invoke_result_t<F&, std::size_t>;
  std::vector<Result> results(trials);
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), std::max<std::size_t>(trials, 1)));
  if (workers <= 1) {
    for (std::size_t t = 0; t < trials; ++t) results[t] = fn(t);
    return results;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= trials) return;
      try {
        results[t] = fn(t);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(trials);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return results;
}

}  // namespace bcirc
