#include <benchmark/benchmark.h>

#include "sngp/data.hpp"
#include "sngp/gram.hpp"
#include "sngp/regression.hpp"

namespace {

void GramPropagate(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const auto ds = sngp::circulant_dataset(m);
    const auto table = sngp::build_lookup(0.2);
    auto g = sngp::input_gram(ds.x, Eigen::MatrixXd(0, 2));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sngp::propagate(g, table, table.sigma()));
    }
    state.SetComplexityN(m);
}
BENCHMARK(GramPropagate)->RangeMultiplier(2)->Range(128, 1024)->Complexity();

void DeepGram(benchmark::State& state) {
    const auto ds = sngp::circulant_dataset(256);
    const auto cfg = sngp::KernelConfig::make(0.1, static_cast<int>(state.range(0)));
    const auto table = sngp::build_lookup(cfg.f);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sngp::gram_deep(ds.x, Eigen::MatrixXd(0, 2), cfg, &table));
    }
}
BENCHMARK(DeepGram)->Arg(1)->Arg(8)->Arg(30);

void KrrSolve(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const auto ds = sngp::circulant_dataset(m);
    const auto cfg = sngp::KernelConfig::make(0.2, 3);
    const auto g = sngp::gram_deep(ds.x, ds.x, cfg);
    const Eigen::MatrixXd y = sngp::square_wave_target(m, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sngp::krr_predict(g, y, 1e-6));
    }
}
BENCHMARK(KrrSolve)->Arg(256)->Arg(512);

}  // namespace
