#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace swapdist::detail {

// Runs fn(chunk_index, begin, end) over [0, total) split into fixed-size
// chunks and returns the per-chunk results indexed by chunk. The schedule
// depends only on (total, chunk_size), so any fold that walks the returned
// vector in order is reproducible for every thread count.
template <class Result, class Fn>
std::vector<Result> run_chunked(std::uint64_t total, std::uint64_t chunk_size,
                                int threads, Fn fn) {
    const std::uint64_t nchunks = total == 0 ? 0 : (total + chunk_size - 1) / chunk_size;
    std::vector<Result> results(nchunks);
    if (nchunks == 0) return results;

    const unsigned workers =
        std::min<std::uint64_t>(nchunks, threads > 0 ? static_cast<unsigned>(threads)
                                                     : std::thread::hardware_concurrency());
    if (workers <= 1) {
        for (std::uint64_t c = 0; c < nchunks; ++c)
            results[c] = fn(c, c * chunk_size, std::min(total, (c + 1) * chunk_size));
        return results;
    }

    std::atomic<std::uint64_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::uint64_t c = next.fetch_add(1);
            if (c >= nchunks) return;
            results[c] = fn(c, c * chunk_size, std::min(total, (c + 1) * chunk_size));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return results;
}

// Kahan-compensated accumulator.
struct Kahan {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

}  // namespace swapdist::detail
