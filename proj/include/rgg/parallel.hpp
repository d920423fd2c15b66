#pragma once

// Trial-level parallelism helper.  Work items are split into contiguous
// static blocks, each worker writes only its own indices, and the caller
// joins before reading — so results are deterministic regardless of the
// thread count.

#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace rgg {

// Thread count resolution: explicit request > RGG_SPECTRA_THREADS > hardware.
inline std::size_t default_thread_count() {
  if (const char* env = std::getenv("RGG_SPECTRA_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw >= 1 ? hw : 1;
}

// Calls fn(i) for i in [0, count), using up to `threads` workers (0 means
// default_thread_count()).  fn must confine its writes to per-index slots.
template <class Fn>
void parallel_for_index(std::size_t count, std::size_t threads, Fn&& fn) {
  if (count == 0) return;
  if (threads == 0) threads = default_thread_count();
  if (threads > count) threads = count;
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(threads);
  const std::size_t base = count / threads;
  const std::size_t extra = count % threads;
  std::size_t begin = 0;
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t len = base + (t < extra ? 1 : 0);
    const std::size_t end = begin + len;
    workers.emplace_back([begin, end, &fn] {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
    begin = end;
  }
  for (std::thread& w : workers) w.join();
}

}  // namespace rgg
