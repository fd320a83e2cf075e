#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace sepred {

/// Worker count: explicit value if positive, else SEPRED_THREADS, else hardware concurrency.
unsigned resolve_threads(int requested = 0);

/// Splits [0, count) into contiguous chunks, one per worker, and runs
/// fn(begin, end, worker_index) on each. Exceptions from workers are rethrown.
template <typename Fn>
void parallel_chunks(std::uint64_t count, unsigned threads, Fn&& fn) {
    if (count == 0) return;
    const std::uint64_t workers = std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, count));
    if (workers == 1) {
        fn(std::uint64_t{0}, count, 0u);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::uint64_t w = 0; w < workers; ++w) {
            const std::uint64_t begin = count * w / workers;
            const std::uint64_t end = count * (w + 1) / workers;
            pool.emplace_back([&, begin, end, w] {
                try {
                    fn(begin, end, static_cast<unsigned>(w));
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace sepred
