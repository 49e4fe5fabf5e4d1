#include "parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace rcsp {

namespace {

std::atomic<int> g_thread_override{0};

int env_thread_cap() {
  const char* env = std::getenv("RCSP_THREADS");
  if (env != nullptr) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v < 4096) {
      return static_cast<int>(v);
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace

int max_worker_threads() {
  const int override = g_thread_override.load(std::memory_order_relaxed);
  return override > 0 ? override : env_thread_cap();
}

void set_max_worker_threads(int n) {
  g_thread_override.store(n > 0 ? n : 0, std::memory_order_relaxed);
}

void parallel_chunks(uint64_t chunk_count,
                     const std::function<void(uint64_t)>& run_chunk) {
  if (chunk_count == 0) return;
  const uint64_t workers =
      std::min<uint64_t>(static_cast<uint64_t>(max_worker_threads()), chunk_count);
  if (workers <= 1) {
    for (uint64_t c = 0; c < chunk_count; ++c) run_chunk(c);
    return;
  }

  std::atomic<uint64_t> next{0};
  std::exception_ptr first_error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (uint64_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const uint64_t c = next.fetch_add(1, std::memory_order_relaxed);
        if (c >= chunk_count || failed.load(std::memory_order_relaxed)) return;
        try {
          run_chunk(c);
        } catch (...) {
          if (!failed.exchange(true)) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace rcsp
