#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dgmg {

/// Number of worker threads used by element loops. Defaults to 1.
void set_thread_count(int threads);
int thread_count();

/// Runs body(i) for i in [0, n) on the worker threads with a static partition.
/// Bodies must write disjoint outputs.
template <class Body>
void parallel_for(std::size_t n, Body&& body)
{
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (long i = 0; i < count; ++i)
        body(static_cast<std::size_t>(i));
}

/// Sum of partials in index order; result does not depend on the thread count.
double ordered_sum(std::span<const double> partials);

} // namespace dgmg
