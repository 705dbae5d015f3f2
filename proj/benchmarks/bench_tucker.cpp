#include <benchmark/benchmark.h>

#include <random>

#include "lfiqa/tucker.hpp"

namespace {

lfiqa::Tensor3 random_stack(Eigen::Index side, Eigen::Index views) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> normal(0.0, 1.0);
    lfiqa::Tensor3 t(side, side, views);
    for (Eigen::Index k = 0; k < views; ++k)
        for (Eigen::Index j = 0; j < side; ++j)
            for (Eigen::Index i = 0; i < side; ++i) t(i, j, k) = normal(rng);
    return t;
}

void BM_AngularComponentsFast(benchmark::State& state) {
    const auto t = random_stack(state.range(0), 9);
    for (auto _ : state) benchmark::DoNotOptimize(lfiqa::angular_components(t));
}
BENCHMARK(BM_AngularComponentsFast)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMicrosecond);

void BM_AngularComponentsGeneral(benchmark::State& state) {
    const auto t = random_stack(state.range(0), 9);
    for (auto _ : state) benchmark::DoNotOptimize(lfiqa::angular_components_general(t));
}
BENCHMARK(BM_AngularComponentsGeneral)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_TuckerFullRank(benchmark::State& state) {
    const Eigen::Index n = state.range(0);
    const auto t = random_stack(n, n);
    for (auto _ : state) benchmark::DoNotOptimize(lfiqa::tucker_als(t, {n, n, n}));
}
BENCHMARK(BM_TuckerFullRank)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
