// SPDX-License-Identifier: Apache-2.0
//
// risvlc: RIS-assisted indoor visible light communication toolkit
// ------------------------------------------------------------------------

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace risvlc
{
    // Worker count: RIS_VLC_THREADS if set to a positive integer, else hardware concurrency
    inline unsigned worker_threads()
    {
        if (const char *env = std::getenv("RIS_VLC_THREADS"))
        {
            try
            {
                auto n = std::stol(env);
                if (n > 0)
                    return unsigned(n);
            }
            catch (const std::exception &)
            {
            }
        }
        return std::max(1u, std::thread::hardware_concurrency());
    }

    // Runs fn(i) for i in [0, n). Each index writes only its own output slot, so
    // results do not depend on the thread count or scheduling.
    template <typename Fn>
    void parallel_for(std::size_t n, Fn &&fn, unsigned threads = worker_threads())
    {
        threads = unsigned(std::min<std::size_t>(threads, n));
        if (threads <= 1)
        {
            for (std::size_t i = 0; i < n; ++i)
                fn(i);
            return;
        }
        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++)
                {
                    try
                    {
                        fn(i);
                    }
                    catch (...)
                    {
                        std::lock_guard lock(error_mutex);
                        if (!error)
                            error = std::current_exception();
                    }
                }
            });
        for (auto &th : pool)
            th.join();
        if (error)
            std::rethrow_exception(error);
    }

} // namespace risvlc
