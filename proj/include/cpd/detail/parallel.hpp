#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace cpd::detail {

/// Runs fn(i) for i in [0, count) and collects results by index, so the
/// output is identical for every worker count.
inline std::vector<double> replicate_map(long count, int parallelism,
                                         const std::function<double(long)>& fn) {
    std::vector<double> out(static_cast<std::size_t>(count));
    const int workers = std::max(1, parallelism);
    if (workers == 1 || count < 2) {
        for (long i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = fn(i);
        return out;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (long i = w; i < count; i += workers) {
                out[static_cast<std::size_t>(i)] = fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
    return out;
}

} // namespace cpd::detail
