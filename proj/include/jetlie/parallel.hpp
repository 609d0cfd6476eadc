#pragma once

#include <exception>
#include <mutex>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace jetlie {

enum class Exec { Serial, Parallel };

// Evaluates f(0..count-1) into a vector in index order. The parallel path
// hands out indices dynamically; results are positionally identical to the
// serial path, so merged reports do not depend on the schedule.
template <class F>
auto index_map(std::size_t count, F&& f, Exec exec) {
    using R = decltype(f(std::size_t{0}));
    std::vector<R> out(count);
    if (exec == Exec::Serial || count < 2) {
        for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
        return out;
    }
    std::exception_ptr err;
    std::mutex mu;
    const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) {
        try {
            out[i] = f(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard lock(mu);
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    return out;
}

}  // namespace jetlie
