#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace checkmine {

/// Number of workers used when the caller passes 0.
inline int default_workers()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

/// Runs body(i) for i in [0, n) on up to `workers` OpenMP threads with dynamic
/// scheduling. The first exception thrown by any iteration is rethrown after
/// the loop; remaining iterations still run.
template <class Body>
void parallel_for(std::size_t n, int workers, Body&& body)
{
    if (workers <= 0)
        workers = default_workers();
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto count = static_cast<long long>(n);

#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (long long i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace checkmine
