// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace sparsecode {

/// Thread-count resolution order: explicit request, SPARSECODE_THREADS, hardware.
int resolve_thread_count(int requested);

/// Runs fn(i) for i in [0, n). Each index must write only to its own output
/// slot; the schedule varies with the thread count but results may not.
void parallel_for(std::int64_t n, int threads, const std::function<void(std::int64_t)>& fn);

}  // namespace sparsecode
