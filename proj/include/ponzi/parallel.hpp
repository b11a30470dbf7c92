#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace ponzi {

/// Global worker cap set from the CLI's --threads flag; 0 means use
/// hardware concurrency.
void set_max_threads(unsigned n);
unsigned max_threads();

/// Runs fn(i) for i in [0, n). Work items must be independent and write only
/// to their own slot so results do not depend on scheduling.
template <typename Fn>
void parallel_for(size_t n, Fn&& fn) {
    const unsigned workers = std::min<size_t>(max_threads(), n);
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace ponzi
