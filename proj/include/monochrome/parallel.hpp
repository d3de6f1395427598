#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace monochrome {

inline unsigned default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Splits [0, count) into `workers` contiguous blocks and runs
/// body(worker, begin, end) for each, one thread per block. The block
/// boundaries depend only on (count, workers). The first exception thrown by
/// any worker is rethrown after all threads have joined.
template <typename Body>
void parallel_blocks(std::size_t count, unsigned workers, Body&& body) {
  workers = std::max(1u, workers);
  if (count < workers) workers = static_cast<unsigned>(std::max<std::size_t>(1, count));
  auto block_begin = [&](unsigned w) { return count * w / workers; };
  if (workers == 1) {
    body(0u, std::size_t{0}, count);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        body(w, block_begin(w), block_begin(w + 1));
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// Number of workers parallel_blocks will actually use.
inline unsigned effective_workers(std::size_t count, unsigned workers) {
  workers = std::max(1u, workers);
  if (count < workers) workers = static_cast<unsigned>(std::max<std::size_t>(1, count));
  return workers;
}

}  // namespace monochrome
