#pragma once

#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

#include "asymlab/common.hpp"

namespace asymlab {

namespace detail {

/// Shared stop flag plus an optional wall-clock budget.
class SearchControl {
 public:
  explicit SearchControl(double budget_seconds = 0)
      : budget_(budget_seconds), start_(std::chrono::steady_clock::now()) {}

  void request_abort() { abort_.store(true, std::memory_order_relaxed); }
  bool aborted() const { return abort_.load(std::memory_order_relaxed); }

  // Call periodically from search loops.
  void tick() {
    if (budget_ <= 0) return;
    thread_local std::uint64_t ticks = 0;
    if ((++ticks & 0xffff) != 0) return;
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    if (elapsed > budget_) {
      over_budget_.store(true, std::memory_order_relaxed);
      request_abort();
    }
  }
  bool over_budget() const { return over_budget_.load(std::memory_order_relaxed); }

 private:
  double budget_;
  std::chrono::steady_clock::time_point start_;
  std::atomic<bool> abort_{false};
  std::atomic<bool> over_budget_{false};
};

/// Runs work(frame_index) for each frame on `jobs` threads, pulling frames
/// in index order. The first exception thrown by any worker is rethrown.
template <class Work>
void run_frames(std::size_t frames, int jobs, Work&& work) {
  if (jobs <= 1 || frames <= 1) {
    for (std::size_t i = 0; i < frames; ++i) work(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= frames) return;
      try {
        work(i);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(frames);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int w = static_cast<int>(std::min<std::size_t>(frames, static_cast<std::size_t>(jobs)));
  pool.reserve(static_cast<std::size_t>(w));
  for (int t = 0; t < w; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

/// Visitors may return void (always continue) or bool (false stops).
template <class V, class T>
bool call_visitor(V& visitor, const T& item) {
  if constexpr (std::is_void_v<std::invoke_result_t<V&, const T&>>) {
    visitor(item);
    return true;
  } else {
    return static_cast<bool>(visitor(item));
  }
}

}  // namespace detail

}  // namespace asymlab
