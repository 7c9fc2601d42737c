#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace harnack {

inline int default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Calls f(i) for i in [0, count) on up to `workers` threads, each taking a
/// contiguous block.  Callers write results into per-index slots and reduce in
/// index order afterwards, so output never depends on the worker count.  The
/// first exception thrown by any f is rethrown here.
template <class F>
void parallel_for(std::size_t count, int workers, F&& f) {
  if (count == 0) return;
  std::size_t w = std::clamp<std::size_t>(workers < 1 ? 1 : workers, 1, count);
  if (w == 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::exception_ptr err;
  std::mutex m;
  std::vector<std::thread> pool;
  for (std::size_t k = 0; k < w; ++k) {
    std::size_t lo = count * k / w, hi = count * (k + 1) / w;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) f(i);
      } catch (...) {
        std::lock_guard lock(m);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace harnack
