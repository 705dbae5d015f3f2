#include <benchmark/benchmark.h>

#include <random>

#include "lfiqa/svr.hpp"

namespace {

struct Problem {
    Eigen::MatrixXd x;
    Eigen::VectorXd y;
};

Problem make_problem(Eigen::Index n, Eigen::Index dims) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Problem p{Eigen::MatrixXd(n, dims), Eigen::VectorXd(n)};
    for (Eigen::Index i = 0; i < p.x.size(); ++i) p.x.data()[i] = u(rng);
    p.y = p.x.rowwise().squaredNorm();
    return p;
}

void BM_SvrFit(benchmark::State& state) {
    const auto p = make_problem(state.range(0), 59);
    lfiqa::SvrHyper h;
    h.c = 16.0;
    h.g = 1.0 / 59.0;
    for (auto _ : state) benchmark::DoNotOptimize(lfiqa::svr_fit(p.x, p.y, h));
}
BENCHMARK(BM_SvrFit)->Arg(120)->Arg(240)->Unit(benchmark::kMillisecond);

// Grid search with inner cross-validation on a small grid.
void BM_SvrTrain(benchmark::State& state) {
    const auto p = make_problem(state.range(0), 59);
    lfiqa::SvrTrainOptions o;
    o.grid.c = {1.0, 4.0, 16.0, 64.0};
    o.grid.g = {1.0 / 256.0, 1.0 / 64.0, 1.0 / 16.0};
    for (auto _ : state) benchmark::DoNotOptimize(lfiqa::svr_train(p.x, p.y, nullptr, o));
}
BENCHMARK(BM_SvrTrain)->Arg(120)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
