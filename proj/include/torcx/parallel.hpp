#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace torcx {

/// Worker count used when a caller passes threads <= 0.
inline int& default_threads() {
  static int n = 1;
  return n;
}

/// out[i] = fn(i) for i < count, evaluated on up to `threads` workers over
/// contiguous blocks. Results land by index, so any reduction over `out` in
/// index order is independent of scheduling. The lowest-index exception wins.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, int threads, Fn&& fn) {
  std::vector<T> out(count);
  if (threads <= 0) threads = default_threads();
  const std::size_t workers = std::min<std::size_t>(std::max(threads, 1), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(count);
  std::atomic<bool> failed{false};
  auto run = [&](std::size_t w) {
    const std::size_t lo = count * w / workers, hi = count * (w + 1) / workers;
    for (std::size_t i = lo; i < hi; ++i) {
      if (failed.load(std::memory_order_relaxed)) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run, w);
  run(0);
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace torcx
