#ifndef FOCKINT_PARALLEL_HPP
#define FOCKINT_PARALLEL_HPP

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace fockint {

/// Runs fn(i) for i in [0, count). Work is split into contiguous index
/// blocks, one per worker; results must be written to per-index slots by
/// the caller so the output is identical for any thread count.
/// threads == 0 picks the hardware concurrency, threads == 1 runs inline.
template <typename Fn>
void parallel_for_index(std::int64_t count, int threads, Fn&& fn) {
    if (count <= 0) return;
    unsigned n = threads > 0 ? static_cast<unsigned>(threads)
                             : std::max(1u, std::thread::hardware_concurrency());
    if (n > static_cast<unsigned>(count)) n = static_cast<unsigned>(count);
    if (n <= 1) {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(n);
    const std::int64_t chunk = (count + n - 1) / n;
    for (unsigned w = 0; w < n; ++w) {
        const std::int64_t lo = static_cast<std::int64_t>(w) * chunk;
        const std::int64_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::int64_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace fockint

#endif  // FOCKINT_PARALLEL_HPP
