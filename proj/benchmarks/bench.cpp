#include <benchmark/benchmark.h>

#include "eahdim/dimension.hpp"
#include "eahdim/ifs.hpp"
#include "eahdim/match.hpp"
#include "eahdim/oracle.hpp"
#include "eahdim/target.hpp"

using namespace eahdim;

static void BM_PressureLinearRoot(benchmark::State& state) {
    const IfsSpec ifs = IfsSpec::similarity({0.5, 0.25, 0.25});
    double slope = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pressure_linear_root(ifs, slope));
        slope = slope < 8.0 ? slope * 1.01 : 0.1;
    }
}
BENCHMARK(BM_PressureLinearRoot);

static void BM_OmegaEstimate(benchmark::State& state) {
    const IfsSpec ifs = IfsSpec::similarity({0.5, 0.25});
    const TargetSpec t = TargetSpec::periodic({1, 2});
    const std::int64_t M_hi = state.range(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(omega_estimate(ifs, t, 2.0, 0.5, 1000, M_hi, 97));
}
BENCHMARK(BM_OmegaEstimate)->Arg(10000)->Arg(100000);

static void BM_OmegaBounds(benchmark::State& state) {
    const IfsSpec ifs = IfsSpec::similarity({0.5, 0.5});
    const TargetSpec t = TargetSpec::periodic({1});
    for (auto _ : state) benchmark::DoNotOptimize(omega_bounds(ifs, t, 0.5));
}
BENCHMARK(BM_OmegaBounds);

static void BM_CountAutomaton(benchmark::State& state) {
    const TargetSpec t = TargetSpec::periodic({1});
    const std::int64_t n = state.range(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(count_eah_words(2, t, linear_window(0.5), n,
                                                 Semantics::Optimistic, CountMethod::Automaton));
}
BENCHMARK(BM_CountAutomaton)->Arg(16)->Arg(24)->Arg(32);

static void BM_DecomposeMatches(benchmark::State& state) {
    const TargetSpec t = TargetSpec::periodic({1});
    const auto lc = build_witness(t, 2.0, 0.25, state.range(0), 2);
    for (auto _ : state) benchmark::DoNotOptimize(decompose_matches(lc.witness_prefix, t));
}
BENCHMARK(BM_DecomposeMatches)->Arg(10000)->Arg(100000);

BENCHMARK_MAIN();
