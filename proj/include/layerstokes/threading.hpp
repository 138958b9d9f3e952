#pragma once

#include <cstddef>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace layerstokes {

/// Index-parallel loop over [0, n) with a fixed worker count.  Work items
/// write to disjoint slots, so results do not depend on scheduling.
inline void parallel_for(size_t n, int threads, const std::function<void(size_t)>& fn) {
    if (threads <= 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const size_t nw = std::min<size_t>(static_cast<size_t>(threads), n);
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (size_t w = 0; w < nw; ++w) {
        pool.emplace_back([&, w]() {
            for (size_t i = w; i < n; i += nw) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace layerstokes
