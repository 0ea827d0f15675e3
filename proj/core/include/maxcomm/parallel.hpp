#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace maxcomm {

/// Worker cap used by the chunked reductions below. 0 restores the default
/// (MAXCOMM_THREADS env var if set, else hardware concurrency).
void set_thread_cap(int cap);
int thread_cap();

/// Splits [0, count) into one contiguous chunk per worker, reduces each
/// chunk serially with `map_chunk(begin, end) -> R`, and combines the chunk
/// results in chunk order. Callers must pass an exactly associative
/// `combine` (elementwise max, argmax with index tie-break) so results do
/// not depend on the worker count. Runs serially when the work is small.
template <typename R, typename MapChunk, typename Combine>
R chunked_reduce(std::int64_t count, MapChunk map_chunk, Combine combine,
                 std::int64_t min_grain = 1 << 14) {
    const int cap = thread_cap();
    const int workers = static_cast<int>(
        std::min<std::int64_t>(cap, count / std::max<std::int64_t>(min_grain, 1) + 1));
    if (workers <= 1 || count == 0) return map_chunk(0, count);

    std::vector<R> partial;
    partial.reserve(workers);
    for (int w = 0; w < workers; ++w) partial.emplace_back();
    {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            const std::int64_t begin = count * w / workers;
            const std::int64_t end = count * (w + 1) / workers;
            pool.emplace_back([&, w, begin, end] { partial[w] = map_chunk(begin, end); });
        }
        for (auto& t : pool) t.join();
    }
    R out = std::move(partial[0]);
    for (int w = 1; w < workers; ++w) out = combine(std::move(out), std::move(partial[w]));
    return out;
}

}  // namespace maxcomm
