#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace jostlp {

//! Runs work(begin, end) over a fixed partition of [0, n) into chunks of
//! size chunk. The partition depends only on (n, chunk), never on the
//! thread count, so reductions that combine per-chunk results in chunk
//! order are deterministic.
inline std::size_t chunk_count(std::size_t n, std::size_t chunk) {
  return (n + chunk - 1) / chunk;
}

inline void parallel_chunks(std::size_t n, std::size_t chunk,
                            const std::function<void(std::size_t chunk_index,
                                                     std::size_t begin,
                                                     std::size_t end)> &work) {
  if (n == 0) return;
  chunk = std::max<std::size_t>(1, chunk);
  const std::size_t n_chunks = chunk_count(n, chunk);
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const unsigned n_threads = unsigned(std::min<std::size_t>(hw, n_chunks));

  if (n_threads <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c)
      work(c, c * chunk, std::min(n, (c + 1) * chunk));
    return;
  }

  std::atomic<std::size_t> next{0};
  auto runner = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= n_chunks) return;
      work(c, c * chunk, std::min(n, (c + 1) * chunk));
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(n_threads - 1);
  for (unsigned t = 0; t + 1 < n_threads; ++t) pool.emplace_back(runner);
  runner();
  for (auto &th : pool) th.join();
}

//! Simple parallel loop over independent items (no reduction).
inline void parallel_for(std::size_t n,
                         const std::function<void(std::size_t)> &item) {
  parallel_chunks(n, 16, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) item(i);
  });
}

} // namespace jostlp
