#pragma once

#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace commdet {

// Runs fn(r) for r = 0..R-1 over a fixed block partition and returns results
// in replicate order.  The output is a pure function of fn and R; the thread
// count only changes wall time.  The first exception thrown by any worker is
// rethrown on the caller.
inline std::vector<double> parallel_map(int R, int threads,
                                        const std::function<double(int)>& fn) {
    std::vector<double> out(static_cast<std::size_t>(R));
    threads = std::max(1, threads);
    if (threads == 1 || R <= 1) {
        for (int r = 0; r < R; ++r) out[static_cast<std::size_t>(r)] = fn(r);
        return out;
    }
    threads = std::min(threads, R);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        long long lo = static_cast<long long>(R) * t / threads;
        long long hi = static_cast<long long>(R) * (t + 1) / threads;
        pool.emplace_back([&, lo, hi]() mutable {
            try {
                for (long long r = lo; r < hi; ++r)
                    out[static_cast<std::size_t>(r)] = fn(static_cast<int>(r));
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

}  // namespace commdet
