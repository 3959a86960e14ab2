// Per-cycle kernels at increasing degree on a 4^3 periodic box.

#include <dgmg/dg_operator.hpp>
#include <dgmg/multigrid.hpp>

#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

namespace {

using namespace dgmg;

HierarchyConfig box(int p)
{
    HierarchyConfig c;
    c.degree = p;
    const double l = 2.0 * std::numbers::pi;
    c.grid = Grid({l, l, l}, {4, 4, 4});
    c.overlap = OverlapSpec::relative(0.08);
    return c;
}

Field noise(const Grid& grid, int p)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    Field f(grid, p);
    for (double& v : f.values())
        v = d(rng);
    return f;
}

void per_dof(benchmark::State& state, std::size_t dof)
{
    state.counters["dof"] = static_cast<double>(dof);
    state.counters["s/dof"] = benchmark::Counter(static_cast<double>(dof),
                                                 benchmark::Counter::kIsIterationInvariantRate
                                                     | benchmark::Counter::kInvert);
}

void BM_apply_A(benchmark::State& state)
{
    const int p = static_cast<int>(state.range(0));
    const auto cfg = box(p);
    const auto ops = LevelOperators::build(cfg.grid, make_basis(BasisKind::GLL, p), 2.0);
    const Field u = noise(cfg.grid, p);
    Field out(cfg.grid, p);
    for (auto _ : state) {
        apply_A(ops, u, out);
        benchmark::DoNotOptimize(out.values().data());
    }
    per_dof(state, u.size());
}

void BM_schwarz_correction(benchmark::State& state)
{
    const int p = static_cast<int>(state.range(0));
    const LevelHierarchy h(box(p));
    const Field r = noise(h.grid(), p);
    for (auto _ : state) {
        Field c = h.finest().smoother.correction(h.grid(), r);
        benchmark::DoNotOptimize(c.values().data());
    }
    per_dof(state, r.size());
}

void BM_v_cycle(benchmark::State& state)
{
    const int p = static_cast<int>(state.range(0));
    const LevelHierarchy h(box(p));
    const Field f = noise(h.grid(), p);
    const Field u(h.grid(), p);
    for (auto _ : state) {
        Field v = v_cycle(h, u, f);
        benchmark::DoNotOptimize(v.values().data());
    }
    per_dof(state, f.size());
}

} // namespace

BENCHMARK(BM_apply_A)->RangeMultiplier(2)->Range(2, 16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_schwarz_correction)->RangeMultiplier(2)->Range(2, 16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_v_cycle)->RangeMultiplier(2)->Range(2, 16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
