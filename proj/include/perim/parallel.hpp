#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace perim {

// Splits [0, total) into contiguous shards and runs fn(first, last) on each.
// Results come back in shard order whatever the worker count, so a caller
// that folds them left to right gets identical output for any `workers`.
// An exception thrown by any shard is rethrown after every worker joins.
template <typename Fn>
auto run_sharded(std::uint64_t total, int workers, Fn&& fn) {
    using Result = decltype(fn(std::uint64_t{}, std::uint64_t{}));
    const std::uint64_t shards =
        std::max<std::uint64_t>(1, std::min<std::uint64_t>(total, static_cast<std::uint64_t>(std::max(workers, 1))));
    std::vector<Result> results(static_cast<std::size_t>(shards));
    auto bounds = [&](std::uint64_t s) { return total * s / shards; };

    if (shards == 1) {
        results[0] = fn(0, total);
        return results;
    }

    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(shards));
    {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(shards));
        for (std::uint64_t s = 0; s < shards; ++s) {
            pool.emplace_back([&, s] {
                try {
                    results[s] = fn(bounds(s), bounds(s + 1));
                } catch (...) {
                    errors[s] = std::current_exception();
                }
            });
        }
    }
    for (auto& error : errors)
        if (error) std::rethrow_exception(error);
    return results;
}

}  // namespace perim
