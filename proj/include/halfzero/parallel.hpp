#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace hz {

/// Worker count from HALFZERO_JOBS, else the hardware concurrency.
inline unsigned default_jobs() {
  if (const char* env = std::getenv("HALFZERO_JOBS")) {
    try {
      int v = std::stoi(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

/// Calls fn(block) for every block in [first, last) on `jobs` threads. Blocks
/// are handed out in increasing order. The first exception thrown by any
/// worker stops the hand-out and is rethrown on the calling thread.
template <typename Fn>
void parallel_blocks(std::uint64_t first, std::uint64_t last, unsigned jobs, Fn&& fn) {
  if (first >= last) return;
  jobs = std::max(1U, jobs);
  if (jobs == 1 || last - first == 1) {
    for (std::uint64_t b = first; b < last; ++b) fn(b);
    return;
  }
  std::atomic<std::uint64_t> next{first};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&]() {
    while (!stop.load()) {
      std::uint64_t b = next.fetch_add(1);
      if (b >= last) return;
      try {
        fn(b);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        stop.store(true);
      }
    }
  };
  std::vector<std::thread> threads;
  const auto n = static_cast<unsigned>(std::min<std::uint64_t>(jobs, last - first));
  threads.reserve(n);
  for (unsigned i = 0; i < n; ++i) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace hz
