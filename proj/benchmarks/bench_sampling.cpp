#include <benchmark/benchmark.h>

#include <random>

#include "critsamp/sampling.hpp"

using namespace critsamp;

static void BM_Fps(benchmark::State& state) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uni(0.0, 100.0);
    int n = static_cast<int>(state.range(0));
    std::vector<double> coords;
    for (int i = 0; i < 2 * n; ++i) coords.push_back(uni(rng));
    PointCloud cloud(2, std::move(coords));
    for (auto _ : state) {
        std::vector<int> chosen = fps(cloud, {128, 0});
        benchmark::DoNotOptimize(chosen.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Fps)->RangeMultiplier(4)->Range(1024, 16384)->Complexity();
