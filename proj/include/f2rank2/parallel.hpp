#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace f2rank2::par {

// 0 = auto (hardware concurrency). Resolved once per call site.
void set_threads(int n);
int thread_count();

// Splits [0,end) into contiguous chunks, runs chunk_fn(begin,end,acc) on a
// private accumulator per thread and combines the accumulators in chunk
// order. Combination order is fixed, so any order-insensitive combine (min,
// sum, set union) gives deterministic results regardless of thread count.
template <class Acc, class ChunkFn, class Combine>
Acc map_reduce(size_t end, Acc init, ChunkFn chunk_fn, Combine combine) {
    int nt = thread_count();
    if (end == 0) return init;
    if (nt <= 1 || end < 256) {
        Acc acc = init;
        chunk_fn(size_t{0}, end, acc);
        return acc;
    }
    size_t chunks = static_cast<size_t>(nt);
    std::vector<Acc> partial(chunks, init);
    std::vector<std::thread> workers;
    size_t per = (end + chunks - 1) / chunks;
    for (size_t c = 0; c < chunks; ++c) {
        size_t b = c * per;
        size_t e = std::min(end, b + per);
        if (b >= e) break;
        workers.emplace_back([&, b, e, c] { chunk_fn(b, e, partial[c]); });
    }
    for (auto& w : workers) w.join();
    Acc acc = init;
    for (size_t c = 0; c < chunks; ++c) acc = combine(acc, partial[c]);
    return acc;
}

}  // namespace f2rank2::par
