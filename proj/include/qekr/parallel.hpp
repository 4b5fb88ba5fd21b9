#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace qekr {

// 0 restores the default (hardware concurrency).
void set_thread_count(unsigned n);
unsigned thread_count();

// Runs body(i) for i in [0, n). Work is handed out in contiguous chunks;
// the first exception thrown by any worker is rethrown on the caller.
template <class Body>
void parallel_for(std::size_t n, Body&& body, std::size_t chunk = 64) {
  unsigned workers = std::min<std::size_t>(thread_count(), (n + chunk - 1) / chunk);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto run = [&] {
    try {
      for (;;) {
        std::size_t lo = next.fetch_add(chunk);
        if (lo >= n) break;
        std::size_t hi = std::min(n, lo + chunk);
        for (std::size_t i = lo; i < hi; ++i) body(i);
      }
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
      next.store(n);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

// Least index i in [0, n) with pred(i), independent of scheduling.
template <class Pred>
std::optional<std::size_t> parallel_find_first(std::size_t n, Pred&& pred, std::size_t chunk = 64) {
  std::atomic<std::size_t> best{n};
  parallel_for(
      (n + chunk - 1) / chunk,
      [&](std::size_t c) {
        std::size_t lo = c * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        for (std::size_t i = lo; i < hi; ++i) {
          if (i >= best.load(std::memory_order_relaxed)) return;
          if (pred(i)) {
            std::size_t cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
            return;
          }
        }
      },
      1);
  if (best.load() == n) return std::nullopt;
  return best.load();
}

}  // namespace qekr
