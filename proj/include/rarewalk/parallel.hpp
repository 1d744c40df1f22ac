#pragma once

#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rarewalk {

inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Runs fn(begin, end, worker) over a static partition of [0, total).
// Exceptions from workers are rethrown on the calling thread.
template <class Fn>
void parallel_chunks(std::uint64_t total, unsigned threads, Fn&& fn) {
  threads = resolve_threads(threads);
  if (total == 0) return;
  if (threads <= 1 || total < 2) {
    fn(std::uint64_t{0}, total, 0u);
    return;
  }
  if (threads > total) threads = static_cast<unsigned>(total);

  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const std::uint64_t chunk = total / threads;
  const std::uint64_t extra = total % threads;
  std::uint64_t begin = 0;
  for (unsigned w = 0; w < threads; ++w) {
    std::uint64_t end = begin + chunk + (w < extra ? 1 : 0);
    pool.emplace_back([&, begin, end, w] {
      try {
        fn(begin, end, w);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
    begin = end;
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace rarewalk
