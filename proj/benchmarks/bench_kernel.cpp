#include <benchmark/benchmark.h>

#include "sngp/kernel.hpp"
#include "sngp/lookup.hpp"

namespace {

void IntegralQuadrature(benchmark::State& state) {
    const double tau = sngp::tau_from_f(0.1);
    double theta = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sngp::integral_I(theta, tau));
        theta += 1e-3;
        if (theta > 3.14) theta = 0.0;
    }
}
BENCHMARK(IntegralQuadrature);

void CosineMapDirect(benchmark::State& state) {
    const double tau = sngp::tau_from_f(0.2);
    const double sigma = sngp::sigma_star(tau);
    double c = -1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sngp::cosine_map(c, tau, sigma));
        c += 1e-4;
        if (c > 1.0) c = -1.0;
    }
}
BENCHMARK(CosineMapDirect);

void CosineMapTable(benchmark::State& state) {
    const auto table = sngp::build_lookup(0.2);
    double c = -1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(table.map_cosine(c));
        c += 1e-7;
        if (c > 1.0) c = -1.0;
    }
}
BENCHMARK(CosineMapTable);

void LookupBuild(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(sngp::build_lookup(0.3, static_cast<int>(state.range(0))));
    }
}
BENCHMARK(LookupBuild)->Arg(257)->Arg(2049);

}  // namespace
