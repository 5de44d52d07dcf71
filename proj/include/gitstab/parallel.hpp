#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gitstab {

// Index-based work sharing. Each worker writes results into caller-owned
// slots keyed by index, so the outcome is independent of the worker count
// and of scheduling; exceptions are rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn)
{
    int workers = jobs < 1 ? 1 : jobs;
    if (static_cast<std::size_t>(workers) > count)
        workers = static_cast<int>(count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        threads.emplace_back([&] {
            std::size_t i;
            while ((i = next.fetch_add(1)) < count) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : threads)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace gitstab
