#pragma once

#include <cstdint>
#include <functional>

namespace clipflow::par {

/// Number of worker threads for internal row/sample parallelism.
/// Resolution order: set_thread_count() override, CLIPFLOW_THREADS env var,
/// hardware concurrency. 0 means "auto".
int thread_count();

/// Programmatic override (0 restores auto). Used by tests to prove results
/// are independent of the thread count.
void set_thread_count(int n);

/// Runs chunk(begin, end) over a static partition of [0, count).
/// Each index is processed exactly once by exactly one thread; callers must
/// not reduce across indices inside chunk, so results are bitwise identical
/// for every thread count.
void for_range(std::int64_t count, const std::function<void(std::int64_t, std::int64_t)>& chunk);

}  // namespace clipflow::par
