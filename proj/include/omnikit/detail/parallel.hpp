#pragma once

#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace omnikit::detail {

/// Runs body(w) for w in [0, workers) on separate threads (inline when
/// workers <= 1) and rethrows the first exception.
template <typename Body>
void run_workers(unsigned workers, Body && body)
{
    if (workers <= 1) {
        body(0U);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            threads.emplace_back([&, w] {
                try {
                    body(w);
                }
                catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (! failure)
                        failure = std::current_exception();
                }
            });
    }
    if (failure)
        std::rethrow_exception(failure);
}

inline auto default_workers() -> unsigned
{
    auto n = std::thread::hardware_concurrency();
    return n == 0 ? 1U : n;
}

} // namespace omnikit::detail
