// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace luc::detail {

/// Splits [0, n) into contiguous chunks, one per worker; f(begin, end, worker).
/// The first exception raised by any worker is rethrown.
template <class F>
void parallel_chunks(std::size_t n, std::size_t threads, F&& f)
{
    threads = std::max<std::size_t>(1, std::min(threads, n));
    if (threads == 1) {
        f(std::size_t{0}, n, std::size_t{0});
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    const std::size_t chunk = (n + threads - 1) / threads;
    for (std::size_t w = 0; w < threads; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        pool.emplace_back([&, begin, end, w] {
            try {
                if (begin < end) f(begin, end, w);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace luc::detail
