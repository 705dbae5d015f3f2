#include <benchmark/benchmark.h>

#include "lfiqa/colorspace.hpp"
#include "lfiqa/features.hpp"
#include "lfiqa/synth.hpp"

namespace {

lfiqa::LightField field(int spatial) {
    lfiqa::SynthSpec spec;
    spec.seed = 3;
    spec.spatial = {spatial, spatial};
    return lfiqa::generate(spec);
}

void BM_LabConversion(benchmark::State& state) {
    const auto lf = field(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(lfiqa::lab_channels(lf));
}
BENCHMARK(BM_LabConversion)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

// Full feature vector of a 9x9 light field.
void BM_ExtractFeatures(benchmark::State& state) {
    const auto lf = field(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(lfiqa::extract_features(lf));
}
BENCHMARK(BM_ExtractFeatures)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
