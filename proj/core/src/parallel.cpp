#include "clipflow/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace clipflow::par {

namespace {

std::atomic<int> g_override{0};

int env_thread_count() {
  const char* raw = std::getenv("CLIPFLOW_THREADS");
  if (raw == nullptr) return 0;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (end == raw || v < 0) return 0;
  return static_cast<int>(v);
}

int resolve() {
  const int forced = g_override.load(std::memory_order_relaxed);
  if (forced > 0) return forced;
  const int env = env_thread_count();
  if (env > 0) return env;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

int thread_count() { return resolve(); }

void set_thread_count(int n) { g_override.store(n < 0 ? 0 : n, std::memory_order_relaxed); }

void for_range(std::int64_t count, const std::function<void(std::int64_t, std::int64_t)>& chunk) {
  if (count <= 0) return;
  const int threads = std::min<std::int64_t>(resolve(), count);
  if (threads <= 1) {
    chunk(0, count);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(threads) - 1);
  const std::int64_t base = count / threads;
  const std::int64_t extra = count % threads;
  std::int64_t begin = 0;
  for (int t = 0; t < threads; ++t) {
    const std::int64_t len = base + (t < extra ? 1 : 0);
    const std::int64_t end = begin + len;
    if (t + 1 == threads) {
      chunk(begin, end);
    } else {
      workers.emplace_back([&chunk, begin, end] { chunk(begin, end); });
    }
    begin = end;
  }
  for (auto& w : workers) w.join();
}

}  // namespace clipflow::par
