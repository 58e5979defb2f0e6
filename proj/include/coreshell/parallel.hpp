#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <type_traits>
#include <vector>

namespace coreshell {

/// Applies f to every element, splitting the range over hardware threads.
/// Output order matches input order, so results never depend on the thread count.
template <typename T, typename F>
auto parallel_map(std::vector<T> const& input, F&& f) -> std::vector<std::invoke_result_t<F&, T const&>>
{
    using R = std::invoke_result_t<F&, T const&>;
    std::size_t const n = input.size();
    std::vector<R> out(n);
    std::size_t const workers = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = f(input[i]);
        }
        return out;
    }

    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers) {
                    out[i] = f(input[i]);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    for (auto const& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

} // namespace coreshell
