#pragma once

#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace opart {

/// Runs body(i) for i in [begin, end) across `jobs` threads (jobs <= 0 means
/// hardware concurrency). Work is split into contiguous blocks; the first
/// exception thrown by any worker is rethrown after all threads join.
/// Callers write results into per-index slots, so output order never depends
/// on scheduling.
inline void parallel_for(long begin, long end, int jobs, const std::function<void(long)>& body) {
    if (begin >= end) return;
    long count = end - begin;
    unsigned hw = std::thread::hardware_concurrency();
    long workers = jobs > 0 ? jobs : (hw > 0 ? static_cast<long>(hw) : 1);
    if (workers > count) workers = count;
    if (workers <= 1) {
        for (long i = begin; i < end; ++i) body(i);
        return;
    }

    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
    long chunk = count / workers;
    long rem = count % workers;
    long at = begin;
    for (long w = 0; w < workers; ++w) {
        long len = chunk + (w < rem ? 1 : 0);
        long lo = at, hi = at + len;
        at = hi;
        threads.emplace_back([&, w, lo, hi] {
            try {
                for (long i = lo; i < hi; ++i) body(i);
            } catch (...) {
                errors[static_cast<size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace opart
