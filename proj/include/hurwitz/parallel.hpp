#pragma once

#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hurwitz {

/// Runs fn(w) for w in [0, workers) on separate threads and joins them.
/// The first exception thrown by any worker is rethrown on the caller.
template <class Fn>
void parallel_for(unsigned workers, Fn&& fn) {
    if (workers <= 1) {
        fn(0u);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                fn(w);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    pool.clear();  // joins
    if (error) std::rethrow_exception(error);
}

}  // namespace hurwitz
