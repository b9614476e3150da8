#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace mitplan {

/// Runs fn(begin, end) over contiguous chunks of [0, count), using at most
/// `threads` workers. Callers must make fn write only to per-index or
/// per-chunk storage; results are then independent of the thread count.
/// Small batches run inline so the planner never pays spawn cost for
/// trivially sized work.
template <typename Fn>
void parallel_chunks(std::size_t count, unsigned threads, Fn&& fn) {
  constexpr std::size_t kMinItemsPerWorker = 32;
  if (count == 0) return;
  std::size_t workers = threads == 0 ? 1 : threads;
  workers = std::min<std::size_t>(workers, count / kMinItemsPerWorker + 1);
  if (workers <= 1) {
    fn(std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t base = count / workers;
  const std::size_t extra = count % workers;
  std::size_t begin = 0;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t len = base + (w < extra ? 1 : 0);
    const std::size_t end = begin + len;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    begin = end;
  }
  for (auto& t : pool) t.join();
}

/// Resolves a requested worker count: 0 means "use every hardware thread".
inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace mitplan
