#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace mstd {

/// 0 means one worker per hardware thread.
inline unsigned resolve_threads(unsigned requested) noexcept {
    if (requested != 0) return requested;
    return std::max(1U, std::thread::hardware_concurrency());
}

/// Runs body(state, index) for every index in [0, count). Indices are handed
/// out in fixed-size blocks, so each worker sees its indices in ascending
/// order. Returns one State per worker; the caller merges them.
template <class State, class Body>
std::vector<State> parallel_blocks(std::uint64_t count, unsigned threads, std::uint64_t block, Body body) {
    const unsigned workers = static_cast<unsigned>(
        std::min<std::uint64_t>(resolve_threads(threads), std::max<std::uint64_t>(1, (count + block - 1) / block)));
    std::vector<State> states(workers);
    std::atomic<std::uint64_t> next{0};
    auto run = [&](State& state) {
        for (;;) {
            const std::uint64_t start = next.fetch_add(block);
            if (start >= count) return;
            const std::uint64_t stop = std::min(count, start + block);
            for (std::uint64_t i = start; i < stop; ++i) body(state, i);
        }
    };
    if (workers == 1) {
        run(states[0]);
        return states;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                run(states[w]);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return states;
}

}  // namespace mstd
