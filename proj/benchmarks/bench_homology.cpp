#include <benchmark/benchmark.h>

#include <random>

#include "critsamp/filtration.hpp"
#include "critsamp/homology.hpp"

using namespace critsamp;

namespace {

PointCloud random_points(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> coords;
    for (int i = 0; i < 2 * n; ++i) coords.push_back(uni(rng));
    return PointCloud(2, std::move(coords));
}

}  // namespace

static void BM_RipsFiltration(benchmark::State& state) {
    PointCloud cloud = random_points(static_cast<int>(state.range(0)), 3);
    double cap = cloud.diameter();
    for (auto _ : state) {
        Filtration filt = rips_filtration(cloud, 3, cap);
        benchmark::DoNotOptimize(filt.simplices.data());
    }
}
BENCHMARK(BM_RipsFiltration)->Arg(16)->Arg(32)->Arg(48);

static void BM_PersistenceReduction(benchmark::State& state) {
    PointCloud cloud = random_points(static_cast<int>(state.range(0)), 3);
    Filtration filt = rips_filtration(cloud, 3, cloud.diameter());
    FilteredComplex fc = to_filtered_complex(filt);
    for (auto _ : state) {
        ReducedPairs rp = reduce_filtered_complex(fc);
        benchmark::DoNotOptimize(rp.pairs.data());
    }
    state.counters["cells"] = static_cast<double>(fc.size());
}
BENCHMARK(BM_PersistenceReduction)->Arg(16)->Arg(32)->Arg(48);
