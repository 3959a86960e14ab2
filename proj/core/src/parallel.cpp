#include "dgmg/parallel.hpp"

#include <algorithm>
#include <atomic>

namespace dgmg {

namespace {
std::atomic<int> g_threads{1};
}

void set_thread_count(int threads) { g_threads.store(std::max(1, threads)); }

int thread_count() { return g_threads.load(); }

double ordered_sum(std::span<const double> partials)
{
    double s = 0.0;
    for (double p : partials)
        s += p;
    return s;
}

} // namespace dgmg
