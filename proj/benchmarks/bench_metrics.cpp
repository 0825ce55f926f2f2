#include <benchmark/benchmark.h>

#include <random>

#include "critsamp/metrics.hpp"

using namespace critsamp;

namespace {

PersistenceDiagram random_diagram(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    PersistenceDiagram d;
    d.cap = 10.0;
    for (int i = 0; i < n; ++i) {
        double birth = 5.0 * uni(rng);
        d.points.push_back({birth, birth + 3.0 * uni(rng) + 1e-3});
    }
    std::sort(d.points.begin(), d.points.end());
    return d;
}

}  // namespace

static void BM_Wasserstein(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    PersistenceDiagram a = random_diagram(n, 1);
    PersistenceDiagram b = random_diagram(n, 2);
    for (auto _ : state) {
        double w = wasserstein(a, b, 1.0);
        benchmark::DoNotOptimize(w);
    }
    state.SetComplexityN(2 * n);  // augmented matching size
}
BENCHMARK(BM_Wasserstein)->RangeMultiplier(2)->Range(8, 128)->Complexity();
