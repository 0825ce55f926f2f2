#include <benchmark/benchmark.h>

#include "critsamp/morse.hpp"
#include "critsamp/synth.hpp"

using namespace critsamp;

static void BM_LowerStarGradient(benchmark::State& state) {
    int side = static_cast<int>(state.range(0));
    ScalarField field = synth_annulus_field(7, {side, side, 0.05});
    for (auto _ : state) {
        DiscreteGradient g = build_lower_star_gradient(field);
        benchmark::DoNotOptimize(g.pair_of.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LowerStarGradient)->Arg(64)->Arg(128)->Arg(256)->Complexity();

static void BM_LowerStarPairs(benchmark::State& state) {
    int side = static_cast<int>(state.range(0));
    ScalarField field = synth_annulus_field(7, {side, side, 0.05});
    for (auto _ : state) {
        auto pairs = persistence_pairs_lower_star(field);
        benchmark::DoNotOptimize(pairs.data());
    }
}
BENCHMARK(BM_LowerStarPairs)->Arg(64)->Arg(128);

static void BM_MsSample(benchmark::State& state) {
    ScalarField field =
        synth_annulus_field(7, {static_cast<int>(state.range(0)),
                                static_cast<int>(state.range(0)), 0.05});
    for (auto _ : state) {
        CriticalSet cs = ms_sample(field, 0.3);
        benchmark::DoNotOptimize(cs.maxima.data());
    }
}
BENCHMARK(BM_MsSample)->Arg(64)->Arg(128);
