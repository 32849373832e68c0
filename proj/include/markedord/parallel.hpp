#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace markedord {

/// Worker cap: MARKEDORD_THREADS if set to a positive integer, else the hardware count.
inline std::size_t thread_budget() {
    if (const char* env = std::getenv("MARKEDORD_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

/// Sums f(0) + ... + f(count-1) across up to thread_budget() workers. Partial sums are
/// combined in chunk order, so the result does not depend on scheduling.
template <class T, class F>
T parallel_sum(std::size_t count, F&& f, T zero = T{}) {
    const std::size_t workers = std::min(thread_budget(), count);
    if (workers <= 1) {
        T total = zero;
        for (std::size_t i = 0; i < count; ++i) total += f(i);
        return total;
    }
    std::vector<T> partial(workers, zero);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < count; i += workers) partial[w] += f(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) if (e) std::rethrow_exception(e);
    T total = zero;
    for (auto& p : partial) total += p;
    return total;
}

} // namespace markedord
